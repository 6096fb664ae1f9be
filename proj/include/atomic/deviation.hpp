#pragma once

#include "atomic/bit_vector.hpp"
#include "atomic/bundle.hpp"
#include "atomic/memristor.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace atomic {

struct DeviationGrid {
    std::vector<double> levels;

    /// 0, step, 2 step, ... up to max inclusive (levels snapped to 1e-12).
    static DeviationGrid uniform(double max, double step);
    /// Throws InvalidParameters unless non-empty, strictly increasing, in [0, 1).
    void validate() const;
};

struct DeviationOptions {
    std::size_t substeps_per_cycle = 1000;
    std::size_t threads = 0;  // 0: hardware concurrency
};

struct DeviationSample {
    double level = 0.0;
    std::size_t combination = 0;
    std::uint32_t corner = 0;       // bit (n-1-j) set: input j deviates upwards
    std::vector<double> final_w;    // per output
    std::vector<LogicValue> logic;  // per output
};

struct DeviationResults {
    std::vector<std::string> outputs;  // expected-state order of the config
    std::vector<BitVector> expected;   // per output
    std::size_t n_inputs = 0;
    std::vector<double> levels;
    /// Sorted by level, combination, corner.
    std::vector<DeviationSample> samples;
    /// nominal[combination][output]
    std::vector<std::vector<double>> nominal;
    std::size_t run_count = 0;
};

/// Logic 1 inputs at w = 1, everything else at w = 0.
std::vector<double> nominal_initial_state(const ValidatedBundle& bundle, std::size_t combination);

/// Input j starts at clamp(b_j +/- level, 0, 1); other devices stay nominal.
std::vector<double> deviated_initial_state(const ValidatedBundle& bundle, std::size_t combination,
                                           std::uint32_t corner, double level);

/// One corner at level 0, 2^n_inputs otherwise.
std::size_t corner_count(double level, std::size_t n_inputs);
std::size_t expected_run_count(const DeviationGrid& grid, std::size_t n_inputs);

DeviationResults evaluate_deviation(const ValidatedBundle& bundle, const DeviationGrid& grid,
                                    const DeviationOptions& options = {});

struct RangeRow {
    std::string output;
    double level = 0.0;
    bool expected = false;
    double min_w = 0.0;
    double max_w = 0.0;
};

using RangeTable = std::vector<RangeRow>;

/// Per output, level and expected value: extremes of final w over all
/// combinations and corners.
RangeTable summarize_ranges(const DeviationResults& results);

/// Undefined counts as incorrect.
bool is_incorrect(LogicValue got, bool expected);

struct CorrectnessRow {
    std::string output;
    double level = 0.0;
    std::size_t total = 0;
    std::size_t incorrect = 0;
    [[nodiscard]] double fraction() const { return total ? static_cast<double>(incorrect) / total : 0.0; }
};

struct CorrectnessTable {
    std::vector<CorrectnessRow> rows;  // by output, then level

    [[nodiscard]] std::size_t incorrect_at(double level) const;
    /// Largest grid level such that it and every lower level are fully correct.
    [[nodiscard]] std::optional<double> max_clean_level() const;
};

/// Expected bits come from the config, so an approximate design is judged
/// against its declared outputs.
CorrectnessTable classify(const DeviationResults& results, const ConfigSpec& config);

/// deviation_results/<output>_<level>.csv
void write_deviation_results(const DeviationResults& results, const std::filesystem::path& dir);
DeviationResults read_deviation_results(const std::filesystem::path& dir, const ConfigSpec& config);

/// Rows "output,level,expected,min_w,max_w".
void write_range_table(const RangeTable& table, const std::filesystem::path& file);

std::string level_label(double level);

}  // namespace atomic
