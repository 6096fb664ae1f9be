#pragma once

#include "atomic/report.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace atomic {

enum class Stage { Validate, Control, Simulate, Deviate, Plot };

std::string_view to_string(Stage stage);

/// "v,c,s,d,p" or full stage names, comma separated.
std::set<Stage> parse_stages(std::string_view text);

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kValidation = 1;
inline constexpr int kFunctional = 2;
inline constexpr int kSimulation = 3;
inline constexpr int kIo = 4;
}  // namespace exit_code

struct PipelineOptions {
    std::filesystem::path config_file;
    std::filesystem::path out_dir = "outputs";
    std::filesystem::path structures_dir = ATOMIC_DEFAULT_STRUCTURES_DIR;
    std::set<Stage> stages = {Stage::Validate, Stage::Control, Stage::Simulate, Stage::Deviate, Stage::Plot};
    double deviation_max = 0.5;
    double deviation_step = 0.05;
    std::size_t substeps = 1000;
    bool record_waveforms = true;
    bool deterministic_log = false;
    std::size_t threads = 0;
    FigureSize figure;
};

struct PipelineSummary {
    std::string algorithm;
    std::filesystem::path output_dir;
    int exit_code = exit_code::kOk;
    std::string message;
    std::size_t steps = 0;
    std::size_t memristors = 0;
    std::optional<bool> functional_pass;
    std::optional<bool> circuit_pass;
    std::optional<double> mean_energy;  // joules per input combination
    std::optional<double> max_clean_level;
};

/// Runs the selected stages in order, stopping at the first failure.
PipelineSummary run_pipeline(const PipelineOptions& options);

struct SoaReport {
    std::vector<PipelineSummary> rows;
    std::filesystem::path table;
    [[nodiscard]] bool all_passed() const;
};

/// Full pipeline for every *.json config in algorithms_dir, then
/// soa_summary.csv in out_dir. A failing algorithm is recorded, not fatal.
SoaReport evaluate_soa(const std::filesystem::path& algorithms_dir, const PipelineOptions& base);

}  // namespace atomic
