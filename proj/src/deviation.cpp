#include "atomic/deviation.hpp"

#include "atomic/control_logic.hpp"
#include "atomic/errors.hpp"
#include "atomic/numfmt.hpp"
#include "atomic/state_model.hpp"
#include "atomic/transient.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace atomic {

DeviationGrid DeviationGrid::uniform(double max, double step) {
    if (!(step > 0.0) || !(max >= 0.0)) {
        throw Error(ErrorKind::InvalidParameters, "deviation grid needs step > 0 and max >= 0");
    }
    DeviationGrid grid;
    const auto count = static_cast<std::size_t>(std::floor(max / step + 1e-9));
    for (std::size_t i = 0; i <= count; ++i) {
        grid.levels.push_back(snap_level(static_cast<double>(i) * step));
    }
    grid.validate();
    return grid;
}

void DeviationGrid::validate() const {
    if (levels.empty()) throw Error(ErrorKind::InvalidParameters, "deviation grid is empty");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!(levels[i] >= 0.0 && levels[i] < 1.0)) {
            throw Error(ErrorKind::InvalidParameters, "deviation levels must lie in [0, 1)");
        }
        if (i > 0 && !(levels[i] > levels[i - 1])) {
            throw Error(ErrorKind::InvalidParameters, "deviation levels must be strictly increasing");
        }
    }
}

std::vector<double> nominal_initial_state(const ValidatedBundle& bundle, std::size_t combination) {
    return deviated_initial_state(bundle, combination, 0, 0.0);
}

std::vector<double> deviated_initial_state(const ValidatedBundle& bundle, std::size_t combination,
                                           std::uint32_t corner, double level) {
    const auto& cfg = bundle.config;
    const std::size_t n = cfg.inputs.size();
    std::vector<double> w(cfg.memristors.size(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double b = input_bit(combination, j, n) ? 1.0 : 0.0;
        const double sign = ((corner >> (n - 1 - j)) & 1U) ? 1.0 : -1.0;
        w[cfg.require_index(cfg.inputs[j])] = std::clamp(b + sign * level, 0.0, 1.0);
    }
    return w;
}

std::size_t corner_count(double level, std::size_t n_inputs) {
    return level == 0.0 ? 1 : (std::size_t{1} << n_inputs);
}

std::size_t expected_run_count(const DeviationGrid& grid, std::size_t n_inputs) {
    std::size_t runs = 0;
    for (double p : grid.levels) runs += corner_count(p, n_inputs) << n_inputs;
    return runs;
}

namespace {

struct Job {
    double level;
    std::size_t combination;
    std::uint32_t corner;
};

}  // namespace

DeviationResults evaluate_deviation(const ValidatedBundle& bundle, const DeviationGrid& grid,
                                    const DeviationOptions& options) {
    grid.validate();
    const auto& cfg = bundle.config;
    DeviationResults res;
    res.n_inputs = cfg.inputs.size();
    res.levels = grid.levels;
    std::vector<std::size_t> out_idx;
    for (const auto& [name, bits] : cfg.output_states) {
        res.outputs.push_back(name);
        res.expected.push_back(bits);
        out_idx.push_back(cfg.require_index(name));
    }

    const std::size_t combos = cfg.combination_count();
    std::vector<Job> jobs;
    for (double p : grid.levels) {
        for (std::size_t k = 0; k < combos; ++k) {
            for (std::uint32_t c = 0; c < corner_count(p, res.n_inputs); ++c) jobs.push_back({p, k, c});
        }
    }
    const bool has_zero = grid.levels.front() == 0.0;
    const std::size_t grid_jobs = jobs.size();
    if (!has_zero) {
        for (std::size_t k = 0; k < combos; ++k) jobs.push_back({0.0, k, 0});
    }
    res.run_count = grid_jobs;

    const WaveformSchedule schedule = eval_algo(bundle);
    TransientOptions topts;
    topts.substeps_per_cycle = options.substeps_per_cycle;
    topts.record = false;

    std::vector<DeviationSample> done(jobs.size());
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::size_t err_job = jobs.size();
    std::exception_ptr err;

    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& job = jobs[i];
            try {
                const auto w0 = deviated_initial_state(bundle, job.combination, job.corner, job.level);
                const auto trace = run_transient(bundle, schedule, w0, topts);
                DeviationSample sample{job.level, job.combination, job.corner, {}, {}};
                for (std::size_t o : out_idx) {
                    sample.final_w.push_back(trace.final_w[o]);
                    sample.logic.push_back(threshold_logic(trace.final_w[o]));
                }
                done[i] = std::move(sample);
            } catch (const Error& e) {
                std::lock_guard lock(err_mutex);
                if (i < err_job) {
                    err_job = i;
                    err = std::make_exception_ptr(
                        Error(e.kind(), std::string(e.what()) + " (level " + format_double(job.level) +
                                            ", combination " + std::to_string(job.combination) + ", corner " +
                                            std::to_string(job.corner) + ")"));
                }
            }
        }
    };

    std::size_t threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (err) std::rethrow_exception(err);

    res.nominal.assign(combos, {});
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (jobs[i].level == 0.0) res.nominal[jobs[i].combination] = done[i].final_w;
    }
    done.resize(grid_jobs);
    // Jobs were generated in (level, combination, corner) order already; the
    // explicit sort keeps that a stated property rather than an accident.
    std::stable_sort(done.begin(), done.end(), [](const DeviationSample& a, const DeviationSample& b) {
        if (a.level != b.level) return a.level < b.level;
        if (a.combination != b.combination) return a.combination < b.combination;
        return a.corner < b.corner;
    });
    res.samples = std::move(done);
    return res;
}

RangeTable summarize_ranges(const DeviationResults& results) {
    RangeTable table;
    for (std::size_t o = 0; o < results.outputs.size(); ++o) {
        for (double p : results.levels) {
            for (bool expected : {false, true}) {
                RangeRow row{results.outputs[o], p, expected, INFINITY, -INFINITY};
                bool any = false;
                for (const auto& s : results.samples) {
                    if (s.level != p || results.expected[o].get(s.combination) != expected) continue;
                    row.min_w = std::min(row.min_w, s.final_w[o]);
                    row.max_w = std::max(row.max_w, s.final_w[o]);
                    any = true;
                }
                if (any) table.push_back(row);
            }
        }
    }
    return table;
}

bool is_incorrect(LogicValue got, bool expected) {
    return got != (expected ? LogicValue::One : LogicValue::Zero);
}

std::size_t CorrectnessTable::incorrect_at(double level) const {
    std::size_t n = 0;
    for (const auto& r : rows) {
        if (r.level == level) n += r.incorrect;
    }
    return n;
}

std::optional<double> CorrectnessTable::max_clean_level() const {
    std::vector<double> levels;
    for (const auto& r : rows) levels.push_back(r.level);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    std::optional<double> best;
    for (double p : levels) {
        if (incorrect_at(p) != 0) break;
        best = p;
    }
    return best;
}

CorrectnessTable classify(const DeviationResults& results, const ConfigSpec& config) {
    CorrectnessTable table;
    for (std::size_t o = 0; o < results.outputs.size(); ++o) {
        const BitVector& expected = config.expected(results.outputs[o]);
        for (double p : results.levels) {
            CorrectnessRow row{results.outputs[o], p, 0, 0};
            for (const auto& s : results.samples) {
                if (s.level != p) continue;
                ++row.total;
                if (is_incorrect(s.logic[o], expected.get(s.combination))) ++row.incorrect;
            }
            table.rows.push_back(row);
        }
    }
    return table;
}

std::string level_label(double level) { return format_double(snap_level(level)); }

void write_deviation_results(const DeviationResults& results, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create '" + dir.string() + "': " + ec.message());
    for (std::size_t o = 0; o < results.outputs.size(); ++o) {
        for (double p : results.levels) {
            const auto file = dir / (results.outputs[o] + "_" + level_label(p) + ".csv");
            std::ofstream out(file, std::ios::binary | std::ios::trunc);
            if (!out) throw Error(ErrorKind::IoError, "cannot write '" + file.string() + "'");
            out << "combination,corner_mask,final_w,classification\n";
            for (const auto& s : results.samples) {
                if (s.level != p) continue;
                out << s.combination << ',' << s.corner << ',' << format_double(s.final_w[o]) << ','
                    << to_string(s.logic[o]) << '\n';
            }
            if (!out) throw Error(ErrorKind::IoError, "write failed for '" + file.string() + "'");
        }
    }
}

DeviationResults read_deviation_results(const std::filesystem::path& dir, const ConfigSpec& config) {
    DeviationResults res;
    res.n_inputs = config.inputs.size();
    for (const auto& [name, bits] : config.output_states) {
        res.outputs.push_back(name);
        res.expected.push_back(bits);
    }
    if (!std::filesystem::is_directory(dir)) {
        throw Error(ErrorKind::IoError, "no deviation results in '" + dir.string() + "'");
    }
    // (level, combination, corner) -> per-output values
    std::map<std::tuple<double, std::size_t, std::uint32_t>, DeviationSample> merged;
    std::vector<double> levels;
    for (std::size_t o = 0; o < res.outputs.size(); ++o) {
        const std::string prefix = res.outputs[o] + "_";
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(dir)) {
            const std::string fname = entry.path().filename().string();
            if (entry.path().extension() == ".csv" && fname.rfind(prefix, 0) == 0) files.push_back(entry.path());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            const std::string stem = file.stem().string();
            double level = 0.0;
            try {
                level = parse_double(std::string_view(stem).substr(prefix.size()));
            } catch (const Error&) {
                continue;  // another output whose name extends this one
            }
            if (o == 0) levels.push_back(level);
            std::ifstream in(file, std::ios::binary);
            std::string line;
            std::getline(in, line);
            if (line != "combination,corner_mask,final_w,classification") {
                throw Error(ErrorKind::MalformedToken, "bad header in '" + file.string() + "'", 1, 1);
            }
            std::size_t line_no = 1;
            while (std::getline(in, line)) {
                ++line_no;
                if (line.empty()) continue;
                std::vector<std::string> cols;
                std::size_t pos = 0;
                while (true) {
                    const auto c = line.find(',', pos);
                    cols.push_back(line.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
                    if (c == std::string::npos) break;
                    pos = c + 1;
                }
                if (cols.size() != 4) throw Error(ErrorKind::MalformedToken, "expected four columns", line_no, 1);
                const auto k = static_cast<std::size_t>(std::stoull(cols[0]));
                const auto corner = static_cast<std::uint32_t>(std::stoul(cols[1]));
                auto& sample = merged[{level, k, corner}];
                sample.level = level;
                sample.combination = k;
                sample.corner = corner;
                sample.final_w.resize(res.outputs.size(), 0.0);
                sample.logic.resize(res.outputs.size(), LogicValue::Undefined);
                sample.final_w[o] = parse_double(cols[2]);
                sample.logic[o] = threshold_logic(sample.final_w[o]);
            }
        }
    }
    std::sort(levels.begin(), levels.end());
    res.levels = levels;
    for (auto& [key, sample] : merged) res.samples.push_back(std::move(sample));
    res.run_count = res.samples.size();
    res.nominal.assign(config.combination_count(), {});
    for (const auto& s : res.samples) {
        if (s.level == 0.0) res.nominal[s.combination] = s.final_w;
    }
    return res;
}

void write_range_table(const RangeTable& table, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + file.string() + "'");
    out << "output,level,expected,min_w,max_w\n";
    for (const auto& r : table) {
        out << r.output << ',' << level_label(r.level) << ',' << (r.expected ? 1 : 0) << ','
            << format_double(r.min_w) << ',' << format_double(r.max_w) << '\n';
    }
    if (!out) throw Error(ErrorKind::IoError, "write failed for '" + file.string() + "'");
}

}  // namespace atomic
