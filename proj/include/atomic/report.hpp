#pragma once

#include "atomic/config.hpp"
#include "atomic/deviation.hpp"
#include "atomic/transient.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace atomic {

struct FigureSize {
    double width = 800.0;
    double height = 480.0;
};

/// Nominal curve of one device with the corner envelope around it. The
/// envelope includes the nominal trace, so min <= nominal <= max.
struct WaveformBand {
    std::vector<double> time;
    std::vector<double> nominal;
    std::vector<double> min;
    std::vector<double> max;
};

/// Throws MismatchedTimeBase when a corner trace is sampled differently.
WaveformBand waveform_band(const TransientTrace& nominal, std::span<const TransientTrace> corners,
                           std::size_t device);

/// Keeps every stride-th sample plus the last, at most max_points in total.
WaveformBand decimate(const WaveformBand& band, std::size_t max_points);

/// Images/waveform_<output>.svg and .csv per output.
std::vector<std::filesystem::path> plot_waveforms_with_deviation(const TransientTrace& nominal,
                                                                 std::span<const TransientTrace> corners,
                                                                 const std::vector<std::string>& outputs,
                                                                 const std::filesystem::path& out_dir,
                                                                 const FigureSize& size = {},
                                                                 std::size_t max_points = 2000);

/// Images/scatter_<output>.svg and .csv; incorrect samples are drawn red.
std::vector<std::filesystem::path> plot_deviation_scatter(const DeviationResults& results, const ConfigSpec& config,
                                                          const std::filesystem::path& out_dir,
                                                          const FigureSize& size = {});

/// One panel per output: [min, max] ribbons of the expected-1 and
/// expected-0 groups with the 1/3 and 2/3 thresholds. Writes out (.svg) and
/// its .csv twin.
std::filesystem::path plot_deviation_range(const RangeTable& table, const std::filesystem::path& out,
                                           const FigureSize& size = {});

inline constexpr const char* kIncorrectColor = "red";
inline constexpr const char* kCorrectColor = "#1f77b4";

}  // namespace atomic
