#pragma once

#include "atomic/bundle.hpp"
#include "atomic/control_logic.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace atomic {

struct TransientOptions {
    std::size_t substeps_per_cycle = 1000;
    bool record = true;
};

/// Sampled run. Each step contributes substeps + 1 samples: the start of the
/// cycle (already under that step's drive) and the end of every substep, so
/// a cycle boundary appears twice, once per adjacent step.
struct TransientTrace {
    double cycle_time = 0.0;
    std::vector<std::string> device_names;
    std::vector<double> time;
    std::vector<std::uint32_t> step_of_sample;
    std::vector<std::vector<double>> w;               // [device][sample]
    std::vector<std::vector<double>> node_voltage;    // [section][sample]
    std::vector<std::vector<double>> device_power;    // [device][sample]
    std::vector<std::vector<double>> ground_power;    // [section][sample]
    std::vector<double> final_w;                      // [device]

    [[nodiscard]] std::size_t sample_count() const { return time.size(); }
};

/// Forward Euler over every step with w clamped to [0, 1]. Sections joined by
/// a closed bridge share one node; a closed ground switch pins the node to
/// 0 V. initial_w is indexed like the bundle's memristors.
TransientTrace run_transient(const ValidatedBundle& bundle, const WaveformSchedule& schedule,
                             std::span<const double> initial_w, const TransientOptions& options = {});

/// Header "time_s,<dev>_w,...,vG_s<k>,...".
void write_trace_csv(const TransientTrace& trace, const std::filesystem::path& file);

struct EnergyReport {
    double total = 0.0;
    std::vector<double> per_device;
    std::vector<double> per_ground;  // R_G of each section
    std::vector<double> per_step;
};

/// Trapezoidal integration of every power series, split at cycle boundaries.
EnergyReport calculate_energy(const TransientTrace& trace);

}  // namespace atomic
