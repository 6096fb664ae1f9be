#include "atomic/deviation.hpp"
#include "atomic/errors.hpp"
#include "atomic/state_model.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

using namespace atomic;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("atomic_dev_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::map<std::string, std::string> tree(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::ifstream in(e.path(), std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        out[fs::relative(e.path(), dir).string()] = s.str();
    }
    return out;
}

const DeviationResults& serial_results() {
    static const DeviationResults r = [] {
        const auto b = fixture::bundled("serial_fa");
        return evaluate_deviation(b, DeviationGrid{{0.0, 0.1, 0.15, 0.2}}, {1000, 0});
    }();
    return r;
}

}  // namespace

TEST(DeviationGrid, Uniform) {
    const auto g = DeviationGrid::uniform(0.5, 0.05);
    ASSERT_EQ(g.levels.size(), 11u);
    EXPECT_EQ(g.levels.front(), 0.0);
    EXPECT_NEAR(g.levels.back(), 0.5, 1e-12);
    EXPECT_NEAR(g.levels[3], 0.15, 1e-12);
    EXPECT_NO_THROW(g.validate());
}

TEST(DeviationGrid, ValidateRejects) {
    EXPECT_THROW(DeviationGrid{}.validate(), Error);
    EXPECT_THROW((DeviationGrid{{0.0, 0.2, 0.1}}.validate()), Error);
    EXPECT_THROW((DeviationGrid{{0.0, 0.1, 0.1}}.validate()), Error);
    EXPECT_THROW((DeviationGrid{{-0.1}}.validate()), Error);
    EXPECT_THROW((DeviationGrid{{1.0}}.validate()), Error);
}

TEST(DeviationRuns, CountForThreeInputs) {
    const DeviationGrid g{{0.0, 0.1}};
    EXPECT_EQ(expected_run_count(g, 3), 72u);
    EXPECT_EQ(corner_count(0.0, 3), 1u);
    EXPECT_EQ(corner_count(0.1, 3), 8u);
    const auto r = evaluate_deviation(fixture::bundled("serial_fa"), g, {200, 0});
    EXPECT_EQ(r.run_count, 72u);
    EXPECT_EQ(r.samples.size(), 72u);
}

TEST(DeviationRuns, DefaultGridCount) {
    EXPECT_EQ(expected_run_count(DeviationGrid::uniform(0.5, 0.05), 3), 8u + 10u * 64u);
}

TEST(DeviatedState, ClampAndDirection) {
    const auto b = fixture::bundled("serial_fa");
    // combination 5 = a 1, b 0, c 1; corner 0b010 moves b up, a and c down
    const auto w = deviated_initial_state(b, 5, 0b010, 0.3);
    EXPECT_NEAR(w[b.config.require_index("a")], 0.7, 1e-15);
    EXPECT_NEAR(w[b.config.require_index("b")], 0.3, 1e-15);
    EXPECT_NEAR(w[b.config.require_index("c")], 0.7, 1e-15);
    const auto up = deviated_initial_state(b, 5, 0b111, 0.3);
    EXPECT_EQ(up[b.config.require_index("a")], 1.0);
    EXPECT_EQ(up[b.config.require_index("b")], 0.3);
    const auto down = deviated_initial_state(b, 2, 0b000, 0.3);
    EXPECT_EQ(down[b.config.require_index("a")], 0.0);
    EXPECT_EQ(down[b.config.require_index("b")], 0.7);
    EXPECT_EQ(down[b.config.require_index("w1")], 0.0);
    EXPECT_EQ(down[b.config.require_index("cout")], 0.0);
}

TEST(DeviatedState, ZeroLevelIsNominal) {
    const auto b = fixture::bundled("semi_serial_fa");
    for (std::size_t k = 0; k < 8; ++k) {
        for (std::uint32_t c = 0; c < 8; ++c) EXPECT_EQ(deviated_initial_state(b, k, c, 0.0), nominal_initial_state(b, k));
    }
}

TEST(DeviationRuns, ZeroLevelMatchesNominal) {
    const auto& r = serial_results();
    for (const auto& s : r.samples) {
        if (s.level != 0.0) continue;
        for (std::size_t o = 0; o < r.outputs.size(); ++o) EXPECT_EQ(s.final_w[o], r.nominal[s.combination][o]);
    }
}

TEST(DeviationRuns, EveryCornerCoveredOnce) {
    const auto& r = serial_results();
    std::set<std::tuple<double, std::size_t, std::uint32_t>> seen;
    for (const auto& s : r.samples) EXPECT_TRUE(seen.insert({s.level, s.combination, s.corner}).second);
    for (double level : r.levels) {
        for (std::size_t k = 0; k < 8; ++k) {
            for (std::uint32_t c = 0; c < corner_count(level, 3); ++c) EXPECT_TRUE(seen.count({level, k, c}));
        }
    }
    EXPECT_TRUE(std::is_sorted(r.samples.begin(), r.samples.end(), [](const auto& a, const auto& b) {
        return std::tie(a.level, a.combination, a.corner) < std::tie(b.level, b.combination, b.corner);
    }));
}

TEST(DeviationRuns, IndependentOfThreadCount) {
    const auto b = fixture::bundled("serial_fa");
    const DeviationGrid g{{0.0, 0.2}};
    const auto one = evaluate_deviation(b, g, {200, 1});
    const auto four = evaluate_deviation(b, g, {200, 4});
    ASSERT_EQ(one.samples.size(), four.samples.size());
    for (std::size_t i = 0; i < one.samples.size(); ++i) EXPECT_EQ(one.samples[i].final_w, four.samples[i].final_w);
}

TEST(RangeTable, Properties) {
    const auto& r = serial_results();
    const auto table = summarize_ranges(r);
    EXPECT_EQ(table.size(), r.outputs.size() * r.levels.size() * 2);
    for (const auto& row : table) {
        EXPECT_GE(row.min_w, 0.0);
        EXPECT_LE(row.max_w, 1.0);
        EXPECT_LE(row.min_w, row.max_w);
    }
}

TEST(RangeTable, ZeroLevelIsNominalSpread) {
    // Logic 1 settles within a narrow band. Logic 0 spreads wider because a
    // zero keeps whatever drift its partial IMPLY disturbances left behind;
    // the 0.1 bound is frozen from this simulator.
    const auto& r = serial_results();
    for (const auto& row : summarize_ranges(r)) {
        if (row.level != 0.0) continue;
        const auto o = static_cast<std::size_t>(
            std::find(r.outputs.begin(), r.outputs.end(), row.output) - r.outputs.begin());
        double lo = 1.0;
        double hi = 0.0;
        for (std::size_t k = 0; k < 8; ++k) {
            if (r.expected[o].get(k) != row.expected) continue;
            lo = std::min(lo, r.nominal[k][o]);
            hi = std::max(hi, r.nominal[k][o]);
        }
        EXPECT_EQ(row.min_w, lo);
        EXPECT_EQ(row.max_w, hi);
        EXPECT_LT(row.max_w - row.min_w, row.expected ? 0.02 : 0.1) << row.output << " " << row.expected;
    }
}

TEST(Classify, Examples) {
    EXPECT_FALSE(is_incorrect(LogicValue::One, true));
    EXPECT_FALSE(is_incorrect(LogicValue::Zero, false));
    EXPECT_TRUE(is_incorrect(LogicValue::Zero, true));
    EXPECT_TRUE(is_incorrect(LogicValue::One, false));
    EXPECT_TRUE(is_incorrect(LogicValue::Undefined, true));
    EXPECT_TRUE(is_incorrect(LogicValue::Undefined, false));
}

TEST(Classify, MaxCleanLevel) {
    CorrectnessTable t;
    t.rows = {{"s", 0.0, 8, 0}, {"s", 0.1, 64, 0}, {"s", 0.2, 64, 3}, {"s", 0.3, 64, 0}};
    EXPECT_EQ(t.max_clean_level(), 0.1);
    EXPECT_EQ(t.incorrect_at(0.2), 3u);
    t.rows[0].incorrect = 1;
    EXPECT_FALSE(t.max_clean_level().has_value());
}

TEST(Classify, ExactAddersCleanAtZero) {
    for (const auto& name : fixture::kExactAdders) {
        const auto b = fixture::bundled(name);
        const auto r = evaluate_deviation(b, DeviationGrid{{0.0}}, {1000, 0});
        EXPECT_EQ(classify(r, b.config).incorrect_at(0.0), 0u) << name;
    }
}

TEST(Classify, ApproximateAdderJudgedAgainstItsOwnTable) {
    const auto b = fixture::bundled("serial_approx_fa");
    const auto r = evaluate_deviation(b, DeviationGrid{{0.0}}, {1000, 0});
    EXPECT_EQ(classify(r, b.config).incorrect_at(0.0), 0u);
}

TEST(Classify, FrozenSerialRegression) {
    const auto& r = serial_results();
    const auto t = classify(r, fixture::bundled("serial_fa").config);
    EXPECT_EQ(t.incorrect_at(0.0), 0u);
    EXPECT_EQ(t.incorrect_at(0.1), 0u);
    EXPECT_EQ(t.incorrect_at(0.15), 22u);
    EXPECT_EQ(t.incorrect_at(0.2), 50u);
    ASSERT_TRUE(t.max_clean_level().has_value());
    EXPECT_NEAR(*t.max_clean_level(), 0.1, 1e-12);
}

TEST(DeviationFiles, RoundTrip) {
    const auto& r = serial_results();
    const auto b = fixture::bundled("serial_fa");
    const auto dir = scratch("rt");
    write_deviation_results(r, dir);
    EXPECT_TRUE(fs::exists(dir / ("s_" + level_label(0.15) + ".csv")));
    const auto back = read_deviation_results(dir, b.config);
    EXPECT_EQ(back.outputs, r.outputs);
    EXPECT_EQ(back.levels, r.levels);
    ASSERT_EQ(back.samples.size(), r.samples.size());
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        EXPECT_EQ(back.samples[i].combination, r.samples[i].combination);
        EXPECT_EQ(back.samples[i].corner, r.samples[i].corner);
        EXPECT_EQ(back.samples[i].final_w, r.samples[i].final_w);
        EXPECT_EQ(back.samples[i].logic, r.samples[i].logic);
    }
    EXPECT_EQ(classify(back, b.config).rows.size(), classify(r, b.config).rows.size());
    for (double level : r.levels) {
        EXPECT_EQ(classify(back, b.config).incorrect_at(level), classify(r, b.config).incorrect_at(level));
    }
}

TEST(DeviationFiles, ByteDeterministic) {
    const auto b = fixture::bundled("semi_parallel_fa");
    const DeviationGrid g{{0.0, 0.25}};
    const auto a = scratch("det_a");
    const auto c = scratch("det_c");
    write_deviation_results(evaluate_deviation(b, g, {200, 2}), a);
    write_range_table(summarize_ranges(evaluate_deviation(b, g, {200, 2})), a / "range.txt");
    write_deviation_results(evaluate_deviation(b, g, {200, 1}), c);
    write_range_table(summarize_ranges(evaluate_deviation(b, g, {200, 1})), c / "range.txt");
    EXPECT_EQ(tree(a), tree(c));
}

TEST(DeviationFiles, MissingDirectory) {
    try {
        read_deviation_results(scratch("none") / "absent", fixture::bundled("serial_fa").config);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IoError);
    }
}
