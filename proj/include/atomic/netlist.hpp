#pragma once

#include "atomic/bundle.hpp"
#include "atomic/control_logic.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace atomic {

/// SPICE text for one run: a behavioural memristor subcircuit, one instance
/// per device, one R_G per section, voltage-controlled switches and PWL
/// sources taken from the schedule. Floating drive is written as 0 V since
/// the open series switch already isolates the device.
std::string render_netlist(const ValidatedBundle& bundle, const WaveformSchedule& schedule,
                           std::span<const double> initial_w, const std::string& title,
                           std::size_t substeps_per_cycle = 1000);

/// Writes render_netlist(...) to out. A program without steps is rejected
/// with IoError because its .tran would be empty.
std::filesystem::path export_netlist(const ValidatedBundle& bundle, std::span<const double> initial_w,
                                     const std::filesystem::path& out, std::size_t substeps_per_cycle = 1000);

struct NetlistLint {
    std::size_t memristor_instances = 0;
    std::size_t ground_resistors = 0;
    std::size_t switches = 0;
    std::size_t sources = 0;
    bool subcircuits_balanced = true;
    bool unique_element_names = true;
    bool pwl_monotone = true;
    bool has_tran = false;
    bool has_end = false;
    std::vector<std::string> problems;

    [[nodiscard]] bool ok() const { return problems.empty(); }
};

/// Structural checks on SPICE text: element name uniqueness, .subckt/.ends
/// pairing, non-decreasing PWL time points, a .tran and a closing .end.
NetlistLint lint_netlist(std::string_view text);

/// PWL points of every source, keyed by the device or switch it drives.
std::map<std::string, std::vector<PwlPoint>> read_netlist_pwl(std::string_view text);

}  // namespace atomic
