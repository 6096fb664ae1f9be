#include "atomic/control_logic.hpp"

#include "atomic/errors.hpp"
#include "atomic/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace atomic {

std::size_t WaveformSchedule::switch_index(const std::string& name) const {
    const auto it = std::find(switch_names.begin(), switch_names.end(), name);
    if (it == switch_names.end()) {
        throw Error(ErrorKind::TopologyMismatch, "schedule has no switch '" + name + "'");
    }
    return static_cast<std::size_t>(it - switch_names.begin());
}

WaveformSchedule eval_algo(const ValidatedBundle& bundle) {
    const auto& p = bundle.params;
    const auto& names = bundle.config.memristors;
    WaveformSchedule sch;
    sch.cycle_time = p.cycle_time;
    sch.step_count = bundle.step_count();
    sch.device_names = names;
    sch.device_levels.assign(names.size(), std::vector<DriveLevel>(sch.step_count));
    sch.switch_names = bundle.config.switches;
    sch.switch_states.assign(sch.switch_names.size(), std::vector<std::uint8_t>(sch.step_count, 0));

    const auto close = [&](const std::string& sw, std::size_t s) { sch.switch_states[sch.switch_index(sw)][s] = 1; };
    const auto drive = [&](DeviceIndex d, double volts, std::size_t s) {
        sch.device_levels[d][s] = volts;
        close(device_switch_name(names[d]), s);
    };

    for (std::size_t s = 0; s < sch.step_count; ++s) {
        const Step& step = bundle.program.steps[s];
        for (std::size_t i = 0; i < step.size(); ++i) {
            if (const auto* imp = std::get_if<ImplyOp>(&step[i])) {
                drive(imp->src, p.v_cond, s);
                drive(imp->dst, p.v_set, s);
                if (const auto j = bundle.bridge[s][i]) close(bridge_switch_name(i, *j), s);
            } else if (const auto* f = std::get_if<FalseOp>(&step[i])) {
                for (DeviceIndex t : f->targets) drive(t, p.v_reset, s);
                close(ground_switch_name(i), s);
            }
        }
    }
    return sch;
}

std::vector<PwlPoint> pwl_points(const std::vector<DriveLevel>& levels, double cycle_time) {
    std::vector<PwlPoint> out;
    out.reserve(2 * levels.size());
    for (std::size_t s = 0; s < levels.size(); ++s) {
        const double v = levels[s] ? *levels[s] : std::nan("");
        out.push_back({static_cast<double>(s) * cycle_time, v});
        out.push_back({static_cast<double>(s + 1) * cycle_time, v});
    }
    return out;
}

std::vector<PwlPoint> pwl_points(const std::vector<std::uint8_t>& closed, double cycle_time) {
    std::vector<PwlPoint> out;
    out.reserve(2 * closed.size());
    for (std::size_t s = 0; s < closed.size(); ++s) {
        const double v = closed[s] ? 1.0 : 0.0;
        out.push_back({static_cast<double>(s) * cycle_time, v});
        out.push_back({static_cast<double>(s + 1) * cycle_time, v});
    }
    return out;
}

namespace {

std::filesystem::path write_points(const std::filesystem::path& file, const std::vector<PwlPoint>& points) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + file.string() + "'");
    out << "time_s,value\n";
    for (const auto& pt : points) {
        out << format_double(pt.time) << ',' << format_double(pt.value) << '\n';
    }
    if (!out) throw Error(ErrorKind::IoError, "write failed for '" + file.string() + "'");
    return file;
}

}  // namespace

std::vector<std::filesystem::path> write_pwm_csv(const WaveformSchedule& schedule,
                                                 const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create '" + out_dir.string() + "': " + ec.message());
    std::vector<std::filesystem::path> files;
    for (std::size_t d = 0; d < schedule.device_names.size(); ++d) {
        files.push_back(write_points(out_dir / (schedule.device_names[d] + ".csv"),
                                     pwl_points(schedule.device_levels[d], schedule.cycle_time)));
    }
    for (std::size_t w = 0; w < schedule.switch_names.size(); ++w) {
        files.push_back(write_points(out_dir / (schedule.switch_names[w] + ".csv"),
                                     pwl_points(schedule.switch_states[w], schedule.cycle_time)));
    }
    return files;
}

std::vector<PwlPoint> read_pwl_csv(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot read '" + file.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != "time_s,value") {
        throw Error(ErrorKind::MalformedToken, "bad header in '" + file.string() + "'", 1, 1);
    }
    std::vector<PwlPoint> points;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw Error(ErrorKind::MalformedToken, "expected two columns", line_no, 1);
        }
        points.push_back({parse_double(std::string_view(line).substr(0, comma)),
                          parse_double(std::string_view(line).substr(comma + 1))});
    }
    return points;
}

WaveformSchedule read_pwm_csv(const std::filesystem::path& dir, const std::vector<std::string>& device_names,
                              const std::vector<std::string>& switch_names, double cycle_time) {
    WaveformSchedule sch;
    sch.cycle_time = cycle_time;
    sch.device_names = device_names;
    sch.switch_names = switch_names;
    bool first = true;
    const auto check_len = [&](const std::vector<PwlPoint>& pts, const std::string& name) {
        if (pts.size() % 2 != 0) {
            throw Error(ErrorKind::MalformedToken, "odd row count in '" + name + "'");
        }
        if (first) {
            sch.step_count = pts.size() / 2;
            first = false;
        } else if (pts.size() / 2 != sch.step_count) {
            throw Error(ErrorKind::MismatchedTimeBase, "'" + name + "' covers a different number of steps");
        }
    };
    for (const auto& name : device_names) {
        const auto pts = read_pwl_csv(dir / (name + ".csv"));
        check_len(pts, name);
        std::vector<DriveLevel> levels;
        for (std::size_t s = 0; s < pts.size() / 2; ++s) {
            const double v = pts[2 * s].value;
            levels.push_back(std::isnan(v) ? DriveLevel{} : DriveLevel{v});
        }
        sch.device_levels.push_back(std::move(levels));
    }
    for (const auto& name : switch_names) {
        const auto pts = read_pwl_csv(dir / (name + ".csv"));
        check_len(pts, name);
        std::vector<std::uint8_t> closed;
        for (std::size_t s = 0; s < pts.size() / 2; ++s) closed.push_back(pts[2 * s].value != 0.0 ? 1 : 0);
        sch.switch_states.push_back(std::move(closed));
    }
    return sch;
}

}  // namespace atomic
