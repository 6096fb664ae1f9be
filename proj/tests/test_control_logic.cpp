#include "atomic/control_logic.hpp"
#include "atomic/errors.hpp"
#include "fixtures.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>

using namespace atomic;

namespace {

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("atomic_ctl_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

std::size_t data_rows(const std::filesystem::path& file) {
    std::ifstream in(file);
    std::string line;
    std::size_t n = 0;
    std::getline(in, line);
    while (std::getline(in, line)) ++n;
    return n;
}

}  // namespace

TEST(EvalAlgo, ImplyDrive) {
    const auto p = default_imply_parameters();
    const auto b = fixture::serial_bundle(4, 2, "I0,2", p);
    const auto s = eval_algo(b);
    EXPECT_EQ(s.device_levels[0][0], p.v_cond);
    EXPECT_EQ(s.device_levels[2][0], p.v_set);
    EXPECT_FALSE(s.device_levels[1][0]);
    EXPECT_FALSE(s.device_levels[3][0]);
    EXPECT_EQ(s.switch_states[s.switch_index("sm0")][0], 1);
    EXPECT_EQ(s.switch_states[s.switch_index("sm2")][0], 1);
    EXPECT_EQ(s.switch_states[s.switch_index("sm1")][0], 0);
    EXPECT_EQ(s.switch_states[s.switch_index("g0")][0], 0);
}

TEST(EvalAlgo, FalseDrive) {
    const auto p = default_imply_parameters();
    const auto s = eval_algo(fixture::serial_bundle(4, 2, "F1,2", p));
    EXPECT_EQ(s.device_levels[1][0], p.v_reset);
    EXPECT_EQ(s.device_levels[2][0], p.v_reset);
    EXPECT_FALSE(s.device_levels[0][0]);
    EXPECT_EQ(s.switch_states[s.switch_index("g0")][0], 1);
}

TEST(EvalAlgo, EmptyProgram) {
    const auto s = eval_algo(fixture::serial_bundle(3, 1, "", default_imply_parameters()));
    EXPECT_EQ(s.step_count, 0u);
    for (const auto& levels : s.device_levels) EXPECT_TRUE(levels.empty());
}

TEST(EvalAlgo, CrossSectionClosesBridge) {
    const auto b = fixture::bundled("semi_serial_fa");
    const auto s = eval_algo(b);
    EXPECT_EQ(s.switch_states[s.switch_index("x0_1")][5], 1);  // "NOP | I1,5"
    EXPECT_EQ(s.switch_states[s.switch_index("x0_1")][0], 0);
}

TEST(ScheduleProperty, DrivenDevicesEqualOperationDevices) {
    for (const auto& name : fixture::kAllAlgorithms) {
        const auto b = fixture::bundled(name);
        const auto s = eval_algo(b);
        for (std::size_t step = 0; step < b.step_count(); ++step) {
            std::set<std::size_t> named;
            for (const auto& op : b.program.steps[step]) {
                for (auto d : devices_of(op)) named.insert(d);
            }
            std::set<std::size_t> driven;
            for (std::size_t d = 0; d < b.device_count(); ++d) {
                const bool closed = s.switch_states[s.switch_index("s" + b.config.memristors[d])][step] != 0;
                EXPECT_EQ(closed, s.device_levels[d][step].has_value());
                if (s.device_levels[d][step]) {
                    driven.insert(d);
                    const double v = *s.device_levels[d][step];
                    EXPECT_TRUE(v == b.params.v_set || v == b.params.v_cond || v == b.params.v_reset || v == 0.0);
                }
            }
            EXPECT_EQ(driven, named) << name << " step " << step;
        }
    }
}

TEST(ScheduleProperty, SetAndResetTargetsDisjoint) {
    for (const auto& name : fixture::kAllAlgorithms) {
        const auto b = fixture::bundled(name);
        const auto s = eval_algo(b);
        for (std::size_t step = 0; step < b.step_count(); ++step) {
            std::set<std::size_t> set_targets;
            std::set<std::size_t> reset_targets;
            for (const auto& op : b.program.steps[step]) {
                if (const auto* imp = std::get_if<ImplyOp>(&op)) set_targets.insert(imp->dst);
                if (const auto* f = std::get_if<FalseOp>(&op)) reset_targets.insert(f->targets.begin(), f->targets.end());
            }
            for (auto d : set_targets) {
                EXPECT_FALSE(reset_targets.count(d));
                EXPECT_EQ(s.device_levels[d][step], b.params.v_set);
            }
            for (auto d : reset_targets) EXPECT_EQ(s.device_levels[d][step], b.params.v_reset);
        }
    }
}

TEST(WritePwm, RowCountAndSpan) {
    const auto p = default_imply_parameters();
    const auto s = eval_algo(fixture::serial_bundle(3, 1, "F1\nI0,1", p));
    const auto dir = scratch("rows");
    const auto files = write_pwm_csv(s, dir);
    EXPECT_EQ(files.size(), 3u + 4u);
    for (const auto& f : files) {
        EXPECT_EQ(data_rows(f), 4u) << f;
        const auto pts = read_pwl_csv(f);
        EXPECT_EQ(pts.front().time, 0.0);
        EXPECT_EQ(pts.back().time, 2 * p.cycle_time);
    }
    const auto floating = read_pwl_csv(dir / "m2.csv");
    for (const auto& pt : floating) EXPECT_TRUE(std::isnan(pt.value));
    const auto sw = read_pwl_csv(dir / "sm2.csv");
    for (const auto& pt : sw) EXPECT_EQ(pt.value, 0.0);
}

TEST(WritePwm, ZeroStepsHeaderOnly) {
    const auto s = eval_algo(fixture::serial_bundle(2, 1, "", default_imply_parameters()));
    const auto dir = scratch("empty");
    for (const auto& f : write_pwm_csv(s, dir)) EXPECT_EQ(data_rows(f), 0u);
}

TEST(WritePwm, RoundTrip) {
    for (const auto& name : fixture::kAllAlgorithms) {
        const auto b = fixture::bundled(name);
        const auto s = eval_algo(b);
        const auto dir = scratch(name);
        write_pwm_csv(s, dir);
        EXPECT_EQ(read_pwm_csv(dir, s.device_names, s.switch_names, s.cycle_time), s) << name;
    }
}

TEST(WritePwm, UnwritableDirectory) {
    const auto s = eval_algo(fixture::serial_bundle(2, 1, "F1", default_imply_parameters()));
    try {
        write_pwm_csv(s, "/proc/definitely/not/here");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::IoError);
    }
}
