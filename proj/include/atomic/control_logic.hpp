#pragma once

#include "atomic/bundle.hpp"
#include "atomic/memristor.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace atomic {

/// Piecewise-constant drive per device and open/closed state per switch,
/// one entry per step.
struct WaveformSchedule {
    double cycle_time = 0.0;
    std::size_t step_count = 0;
    std::vector<std::string> device_names;
    std::vector<std::vector<DriveLevel>> device_levels;
    std::vector<std::string> switch_names;
    std::vector<std::vector<std::uint8_t>> switch_states;

    [[nodiscard]] std::size_t switch_index(const std::string& name) const;

    friend bool operator==(const WaveformSchedule&, const WaveformSchedule&) = default;
};

WaveformSchedule eval_algo(const ValidatedBundle& bundle);

struct PwlPoint {
    double time = 0.0;
    double value = 0.0;
};

/// Two points per step: the level at the start and at the end of its cycle.
/// Floating levels become NaN.
std::vector<PwlPoint> pwl_points(const std::vector<DriveLevel>& levels, double cycle_time);
std::vector<PwlPoint> pwl_points(const std::vector<std::uint8_t>& closed, double cycle_time);

/// One "<name>.csv" per device and switch, header "time_s,value".
std::vector<std::filesystem::path> write_pwm_csv(const WaveformSchedule& schedule,
                                                 const std::filesystem::path& out_dir);

std::vector<PwlPoint> read_pwl_csv(const std::filesystem::path& file);

/// Rebuilds a schedule from the files written by write_pwm_csv.
WaveformSchedule read_pwm_csv(const std::filesystem::path& dir, const std::vector<std::string>& device_names,
                              const std::vector<std::string>& switch_names, double cycle_time);

}  // namespace atomic
