#include "atomic/errors.hpp"
#include "atomic/report.hpp"
#include "atomic/svg.hpp"
#include "fixtures.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace atomic;
namespace fs = std::filesystem;
namespace pt = boost::property_tree;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("atomic_report_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

void expect_well_formed(const fs::path& file) {
    pt::ptree tree;
    std::ifstream in(file);
    ASSERT_NO_THROW(pt::read_xml(in, tree)) << file;
    EXPECT_EQ(tree.count("svg"), 1u) << file;
}

struct Traces {
    ValidatedBundle bundle;
    TransientTrace nominal;
    std::vector<TransientTrace> corners;
};

const Traces& traces() {
    static const Traces t = [] {
        Traces r{fixture::bundled("serial_fa"), {}, {}};
        const auto s = eval_algo(r.bundle);
        r.nominal = run_transient(r.bundle, s, nominal_initial_state(r.bundle, 7), {100, true});
        for (std::uint32_t c = 0; c < 8; ++c) {
            r.corners.push_back(run_transient(r.bundle, s, deviated_initial_state(r.bundle, 7, c, 0.2), {100, true}));
        }
        return r;
    }();
    return t;
}

const DeviationResults& results() {
    static const DeviationResults r =
        evaluate_deviation(fixture::bundled("serial_fa"), DeviationGrid{{0.0, 0.1, 0.2, 0.3}}, {200, 0});
    return r;
}

}  // namespace

TEST(WaveformBand, EnvelopeContainsEveryTrace) {
    const auto& t = traces();
    const std::size_t d = t.bundle.config.require_index("cout");
    const auto band = waveform_band(t.nominal, t.corners, d);
    ASSERT_EQ(band.time.size(), t.nominal.sample_count());
    for (std::size_t i = 0; i < band.time.size(); ++i) {
        EXPECT_LE(band.min[i], band.nominal[i]);
        EXPECT_LE(band.nominal[i], band.max[i]);
        EXPECT_GE(band.min[i], 0.0);
        EXPECT_LE(band.max[i], 1.0);
        for (const auto& c : t.corners) {
            EXPECT_LE(band.min[i], c.w[d][i]);
            EXPECT_GE(band.max[i], c.w[d][i]);
        }
    }
    EXPECT_EQ(band.nominal.back(), t.nominal.final_w[d]);
}

TEST(WaveformBand, NoCornersCollapses) {
    const auto& t = traces();
    const auto band = waveform_band(t.nominal, {}, 0);
    EXPECT_EQ(band.min, band.nominal);
    EXPECT_EQ(band.max, band.nominal);
}

TEST(WaveformBand, MismatchedTimeBase) {
    const auto& t = traces();
    auto other = t.corners.front();
    other.time.pop_back();
    const TransientTrace corners[] = {other};
    try {
        waveform_band(t.nominal, corners, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MismatchedTimeBase);
    }
    auto shifted = t.corners.front();
    shifted.time[3] += 1e-9;
    const TransientTrace corners2[] = {shifted};
    EXPECT_THROW(waveform_band(t.nominal, corners2, 0), Error);
}

TEST(WaveformBand, DecimateKeepsEnds) {
    const auto band = waveform_band(traces().nominal, traces().corners, 0);
    const auto small = decimate(band, 50);
    EXPECT_LE(small.time.size(), 50u);
    EXPECT_EQ(small.time.front(), band.time.front());
    EXPECT_EQ(small.time.back(), band.time.back());
    EXPECT_EQ(small.nominal.back(), band.nominal.back());
    EXPECT_EQ(decimate(band, band.time.size() + 10).time, band.time);
}

TEST(WaveformPlot, FilesAndCsvTwin) {
    const auto& t = traces();
    const auto dir = scratch("wave");
    const auto files = plot_waveforms_with_deviation(t.nominal, t.corners, {"s", "cout"}, dir, {640, 360}, 300);
    ASSERT_EQ(files.size(), 2u);
    for (const auto& f : files) expect_well_formed(f);
    const auto csv = slurp(dir / "waveform_cout.csv");
    EXPECT_EQ(csv.rfind("time_s,nominal,min,max\n", 0), 0u);
    EXPECT_LE(count(csv, "\n"), 301u);
    EXPECT_NE(slurp(files[0]).find("width=\"640.00\""), std::string::npos);
}

TEST(ScatterPlot, RedMarkersMatchClassification) {
    const auto& r = results();
    const auto cfg = fixture::bundled("serial_fa").config;
    const auto table = classify(r, cfg);
    const auto dir = scratch("scatter");
    const auto files = plot_deviation_scatter(r, cfg, dir);
    ASSERT_EQ(files.size(), r.outputs.size());
    for (std::size_t o = 0; o < r.outputs.size(); ++o) {
        const auto svg = slurp(files[o]);
        expect_well_formed(files[o]);
        std::size_t bad = 0;
        for (const auto& row : table.rows) {
            if (row.output == r.outputs[o]) bad += row.incorrect;
        }
        EXPECT_EQ(count(svg, "<circle"), r.samples.size());
        EXPECT_EQ(count(svg, "fill=\"" + std::string(kIncorrectColor) + "\"/>"), bad);
        EXPECT_EQ(count(svg, "fill=\"" + std::string(kCorrectColor) + "\"/>"), r.samples.size() - bad);
        const auto csv = slurp(dir / ("scatter_" + r.outputs[o] + ".csv"));
        EXPECT_EQ(count(csv, ",1\n"), bad);
    }
}

TEST(ScatterPlot, MarkersPerLevel) {
    const auto& r = results();
    const auto cfg = fixture::bundled("serial_fa").config;
    const auto dir = scratch("per_level");
    plot_deviation_scatter(r, cfg, dir);
    const auto csv = slurp(dir / "scatter_s.csv");
    EXPECT_EQ(count(csv, "\n0,"), 8u);
    EXPECT_EQ(count(csv, "\n0.1,"), 64u);
    EXPECT_EQ(count(csv, "\n0.3,"), 64u);
}

TEST(ScatterPlot, ThresholdCrossingsAgreeWithLogic) {
    // A marker is red exactly when its w lies on the wrong side of the
    // matching threshold or between the thresholds.
    const auto& r = results();
    const auto cfg = fixture::bundled("serial_fa").config;
    for (const auto& s : r.samples) {
        for (std::size_t o = 0; o < r.outputs.size(); ++o) {
            const bool expected = cfg.expected(r.outputs[o]).get(s.combination);
            const double w = s.final_w[o];
            const bool wrong = expected ? w < 2.0 / 3.0 : w > 1.0 / 3.0;
            EXPECT_EQ(is_incorrect(s.logic[o], expected), wrong);
        }
    }
}

TEST(RangePlot, SvgAndCsv) {
    const auto table = summarize_ranges(results());
    const auto dir = scratch("range");
    const auto svg = plot_deviation_range(table, dir / "deviation_range.svg");
    expect_well_formed(svg);
    const auto csv = slurp(dir / "deviation_range.csv");
    EXPECT_EQ(count(csv, "\n"), table.size() + 1);
    EXPECT_THROW(plot_deviation_range({}, dir / "empty.svg"), Error);
}

TEST(Plots, Deterministic) {
    const auto& r = results();
    const auto cfg = fixture::bundled("serial_fa").config;
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    plot_deviation_scatter(r, cfg, a);
    plot_deviation_scatter(r, cfg, b);
    plot_deviation_range(summarize_ranges(r), a / "r.svg");
    plot_deviation_range(summarize_ranges(r), b / "r.svg");
    for (const char* f : {"scatter_s.svg", "scatter_cout.svg", "r.svg", "r.csv"}) {
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    }
}

TEST(Svg, EscapesText) {
    EXPECT_EQ(xml_escape("a<b & \"c\">"), "a&lt;b &amp; &quot;c&quot;&gt;");
    EXPECT_EQ(svg_number(1.005), "1.00");
    SvgWriter svg(100, 50);
    svg.text(1, 2, "x < y & z", 10);
    const auto dir = scratch("escape");
    std::ofstream(dir / "t.svg") << svg.str();
    expect_well_formed(dir / "t.svg");
}
