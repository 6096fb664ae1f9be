#pragma once

#include "atomic/algorithm.hpp"
#include "atomic/bit_vector.hpp"
#include "atomic/bundle.hpp"
#include "atomic/config.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace atomic {

/// Bit of input j (0 = most significant) in combination k.
inline bool input_bit(std::size_t combination, std::size_t j, std::size_t n_inputs) {
    return ((combination >> (n_inputs - 1 - j)) & 1U) != 0;
}

/// Logic vectors of every memristor across all 2^n input combinations.
struct StateModel {
    std::size_t n_inputs = 0;
    std::vector<std::string> names;
    std::vector<BitVector> vectors;

    /// Inputs get their truth-table column, every other device all zeros.
    static StateModel initial(const ConfigSpec& config);

    [[nodiscard]] std::size_t combination_count() const { return std::size_t{1} << n_inputs; }
    [[nodiscard]] const BitVector& at(const std::string& name) const;

    friend bool operator==(const StateModel&, const StateModel&) = default;
};

StateModel imply_op(StateModel state, DeviceIndex src, DeviceIndex dst);
StateModel false_op(StateModel state, const std::vector<DeviceIndex>& targets);

/// Applies every section of a step; sections touch disjoint devices.
void apply_step(StateModel& state, const Step& step);

struct HistoryEntry {
    std::size_t step = 0;     // 0 is the initial snapshot
    std::string operations;   // rendered step, empty for the initial snapshot
    std::vector<BitVector> snapshot;
};

struct StateHistory {
    std::vector<std::string> names;
    std::vector<HistoryEntry> entries;
};

std::pair<StateModel, StateHistory> calc_algorithm(const ConfigSpec& config, const AlgorithmProgram& program);
std::pair<StateModel, StateHistory> calc_algorithm(const ValidatedBundle& bundle);

struct Mismatch {
    std::string output;
    std::size_t combination = 0;
    bool expected = false;
    bool got = false;
    friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct ValidationReport {
    bool passed = true;
    std::vector<Mismatch> mismatches;
};

ValidationReport check_equivalence(const StateModel& final_state, const ConfigSpec& config);

/// State_History.txt layout: "step N: ops" then "name: [bits]" per device,
/// blocks separated by a blank line.
std::string render_history(const StateHistory& history);

}  // namespace atomic
