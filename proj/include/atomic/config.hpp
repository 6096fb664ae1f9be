#pragma once

#include "atomic/bit_vector.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace atomic {

/// Per-algorithm configuration: device roles, topology binding and the
/// expected output columns (exact or approximate).
struct ConfigSpec {
    std::string topology_name;
    std::string algorithm_file;
    std::vector<std::string> memristors;
    std::vector<std::string> inputs;
    std::vector<std::string> work;
    std::vector<std::string> outputs;
    std::vector<std::string> switches;
    std::size_t steps = 0;
    /// Kept in file order.
    std::vector<std::pair<std::string, BitVector>> output_states;

    [[nodiscard]] std::size_t combination_count() const { return std::size_t{1} << inputs.size(); }
    [[nodiscard]] std::optional<std::size_t> index_of(std::string_view name) const;
    [[nodiscard]] std::size_t require_index(std::string_view name) const;
    [[nodiscard]] const BitVector& expected(std::string_view output) const;
};

ConfigSpec parse_config(std::string_view json_text);

bool is_known_topology(std::string_view name);

}  // namespace atomic
