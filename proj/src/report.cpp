#include "atomic/report.hpp"

#include "atomic/errors.hpp"
#include "atomic/numfmt.hpp"
#include "atomic/svg.hpp"

#include <algorithm>
#include <fstream>

namespace atomic {

namespace {

constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 45.0;

void write_file(const std::filesystem::path& file, const std::string& text) {
    if (file.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(file.parent_path(), ec);
        if (ec) throw Error(ErrorKind::IoError, "cannot create '" + file.parent_path().string() + "'");
    }
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + file.string() + "'");
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "write failed for '" + file.string() + "'");
}

PlotFrame frame_for(const FigureSize& size, double top, double height) {
    PlotFrame f;
    f.left = kMarginLeft;
    f.top = top + kMarginTop;
    f.width = size.width - kMarginLeft - kMarginRight;
    f.height = height - kMarginTop - kMarginBottom;
    return f;
}

void threshold_lines(SvgWriter& svg, const PlotFrame& f) {
    for (double t : {1.0 / 3.0, 2.0 / 3.0}) {
        svg.line(f.left, f.py(t), f.left + f.width, f.py(t), "gray", 1.0, "4,3");
    }
}

std::size_t find_device(const TransientTrace& trace, const std::string& name) {
    const auto it = std::find(trace.device_names.begin(), trace.device_names.end(), name);
    if (it == trace.device_names.end()) {
        throw Error(ErrorKind::UnknownOutputName, "trace has no device '" + name + "'");
    }
    return static_cast<std::size_t>(it - trace.device_names.begin());
}

}  // namespace

WaveformBand waveform_band(const TransientTrace& nominal, std::span<const TransientTrace> corners,
                           std::size_t device) {
    if (device >= nominal.w.size()) {
        throw Error(ErrorKind::UnknownOutputName, "device index outside the trace");
    }
    for (const auto& c : corners) {
        if (c.time != nominal.time || c.w.size() != nominal.w.size()) {
            throw Error(ErrorKind::MismatchedTimeBase, "corner trace does not share the nominal time base");
        }
    }
    WaveformBand band;
    band.time = nominal.time;
    band.nominal = nominal.w[device];
    band.min = band.nominal;
    band.max = band.nominal;
    for (const auto& c : corners) {
        for (std::size_t i = 0; i < band.time.size(); ++i) {
            band.min[i] = std::min(band.min[i], c.w[device][i]);
            band.max[i] = std::max(band.max[i], c.w[device][i]);
        }
    }
    return band;
}

WaveformBand decimate(const WaveformBand& band, std::size_t max_points) {
    const std::size_t n = band.time.size();
    if (max_points < 2 || n <= max_points) return band;
    const std::size_t stride = (n - 1 + max_points - 2) / (max_points - 1);
    WaveformBand out;
    for (std::size_t i = 0; i < n; i += stride) {
        out.time.push_back(band.time[i]);
        out.nominal.push_back(band.nominal[i]);
        out.min.push_back(band.min[i]);
        out.max.push_back(band.max[i]);
    }
    if ((n - 1) % stride != 0) {
        out.time.push_back(band.time.back());
        out.nominal.push_back(band.nominal.back());
        out.min.push_back(band.min.back());
        out.max.push_back(band.max.back());
    }
    return out;
}

std::vector<std::filesystem::path> plot_waveforms_with_deviation(const TransientTrace& nominal,
                                                                 std::span<const TransientTrace> corners,
                                                                 const std::vector<std::string>& outputs,
                                                                 const std::filesystem::path& out_dir,
                                                                 const FigureSize& size, std::size_t max_points) {
    std::vector<std::filesystem::path> files;
    for (const auto& name : outputs) {
        const WaveformBand band = decimate(waveform_band(nominal, corners, find_device(nominal, name)), max_points);

        std::string csv = "time_s,nominal,min,max\n";
        for (std::size_t i = 0; i < band.time.size(); ++i) {
            csv += format_double(band.time[i]) + "," + format_double(band.nominal[i]) + "," +
                   format_double(band.min[i]) + "," + format_double(band.max[i]) + "\n";
        }

        SvgWriter svg(size.width, size.height);
        PlotFrame f = frame_for(size, 0.0, size.height);
        f.x_min = band.time.empty() ? 0.0 : band.time.front();
        f.x_max = band.time.empty() ? 1.0 : band.time.back();
        std::vector<std::pair<double, double>> ribbon;
        std::vector<std::pair<double, double>> line;
        for (std::size_t i = 0; i < band.time.size(); ++i) {
            ribbon.emplace_back(f.px(band.time[i]), f.py(band.max[i]));
            line.emplace_back(f.px(band.time[i]), f.py(band.nominal[i]));
        }
        for (std::size_t i = band.time.size(); i-- > 0;) {
            ribbon.emplace_back(f.px(band.time[i]), f.py(band.min[i]));
        }
        svg.polygon(ribbon, kCorrectColor, 0.3);
        svg.polyline(line, "black", 1.5);
        threshold_lines(svg, f);
        f.draw_axes(svg, "state of " + name, "time (s)", "w");

        const auto base = out_dir / ("waveform_" + name);
        write_file(base.string() + ".svg", svg.str());
        write_file(base.string() + ".csv", csv);
        files.emplace_back(base.string() + ".svg");
    }
    return files;
}

std::vector<std::filesystem::path> plot_deviation_scatter(const DeviationResults& results, const ConfigSpec& config,
                                                          const std::filesystem::path& out_dir,
                                                          const FigureSize& size) {
    std::vector<std::filesystem::path> files;
    for (std::size_t o = 0; o < results.outputs.size(); ++o) {
        const auto& name = results.outputs[o];
        const BitVector& expected = config.expected(name);

        SvgWriter svg(size.width, size.height);
        PlotFrame f = frame_for(size, 0.0, size.height);
        f.x_min = results.levels.empty() ? 0.0 : results.levels.front();
        f.x_max = results.levels.empty() ? 1.0 : results.levels.back();
        if (f.x_max == f.x_min) {
            f.x_min -= 0.05;
            f.x_max += 0.05;
        }
        threshold_lines(svg, f);

        std::string csv = "level,combination,corner_mask,final_w,incorrect\n";
        for (const auto& s : results.samples) {
            const bool bad = is_incorrect(s.logic[o], expected.get(s.combination));
            csv += level_label(s.level) + "," + std::to_string(s.combination) + "," + std::to_string(s.corner) + "," +
                   format_double(s.final_w[o]) + "," + (bad ? "1" : "0") + "\n";
            svg.circle(f.px(s.level), f.py(s.final_w[o]), 3.0, bad ? kIncorrectColor : kCorrectColor);
        }
        f.draw_axes(svg, "final state of " + name, "deviation", "w");

        const auto base = out_dir / ("scatter_" + name);
        write_file(base.string() + ".svg", svg.str());
        write_file(base.string() + ".csv", csv);
        files.emplace_back(base.string() + ".svg");
    }
    return files;
}

std::filesystem::path plot_deviation_range(const RangeTable& table, const std::filesystem::path& out,
                                           const FigureSize& size) {
    std::vector<std::string> outputs;
    double lo = 1.0;
    double hi = 0.0;
    for (const auto& r : table) {
        if (std::find(outputs.begin(), outputs.end(), r.output) == outputs.end()) outputs.push_back(r.output);
        lo = std::min(lo, r.level);
        hi = std::max(hi, r.level);
    }
    if (outputs.empty()) throw Error(ErrorKind::InvalidParameters, "range table is empty");
    if (hi <= lo) {
        lo -= 0.05;
        hi += 0.05;
    }

    const double panel_h = size.height;
    SvgWriter svg(size.width, panel_h * static_cast<double>(outputs.size()));
    std::string csv = "output,level,expected,min_w,max_w\n";
    for (std::size_t o = 0; o < outputs.size(); ++o) {
        PlotFrame f = frame_for(size, panel_h * static_cast<double>(o), panel_h);
        f.x_min = lo;
        f.x_max = hi;
        for (bool expected : {true, false}) {
            std::vector<std::pair<double, double>> upper;
            std::vector<std::pair<double, double>> lower;
            for (const auto& r : table) {
                if (r.output != outputs[o] || r.expected != expected) continue;
                upper.emplace_back(f.px(r.level), f.py(r.max_w));
                lower.emplace_back(f.px(r.level), f.py(r.min_w));
                csv += r.output + "," + level_label(r.level) + "," + (expected ? "1" : "0") + "," +
                       format_double(r.min_w) + "," + format_double(r.max_w) + "\n";
            }
            const char* color = expected ? kCorrectColor : "#ff7f0e";
            std::vector<std::pair<double, double>> ribbon = upper;
            ribbon.insert(ribbon.end(), lower.rbegin(), lower.rend());
            if (!ribbon.empty()) svg.polygon(ribbon, color, 0.4);
            for (std::size_t i = 0; i < upper.size(); ++i) {
                svg.line(upper[i].first, upper[i].second, lower[i].first, lower[i].second, color, 2.0);
            }
        }
        threshold_lines(svg, f);
        f.draw_axes(svg, "output range of " + outputs[o], "deviation", "w");
    }

    write_file(out, svg.str());
    auto csv_path = out;
    csv_path.replace_extension(".csv");
    write_file(csv_path, csv);
    return out;
}

}  // namespace atomic
