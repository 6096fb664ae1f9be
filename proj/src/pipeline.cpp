#include "atomic/pipeline.hpp"

#include "atomic/bundle.hpp"
#include "atomic/control_logic.hpp"
#include "atomic/deviation.hpp"
#include "atomic/errors.hpp"
#include "atomic/netlist.hpp"
#include "atomic/numfmt.hpp"
#include "atomic/run_log.hpp"
#include "atomic/state_model.hpp"
#include "atomic/transient.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>

namespace atomic {

std::string_view to_string(Stage stage) {
    switch (stage) {
        case Stage::Validate: return "validate";
        case Stage::Control: return "control";
        case Stage::Simulate: return "simulate";
        case Stage::Deviate: return "deviate";
        case Stage::Plot: break;
    }
    return "plot";
}

std::set<Stage> parse_stages(std::string_view text) {
    std::set<Stage> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const std::string_view tok = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (tok == "v" || tok == "validate") out.insert(Stage::Validate);
        else if (tok == "c" || tok == "control") out.insert(Stage::Control);
        else if (tok == "s" || tok == "simulate") out.insert(Stage::Simulate);
        else if (tok == "d" || tok == "deviate") out.insert(Stage::Deviate);
        else if (tok == "p" || tok == "plot") out.insert(Stage::Plot);
        else throw Error(ErrorKind::MalformedToken, "unknown stage '" + std::string(tok) + "'");
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw Error(ErrorKind::MalformedToken, "no stages selected");
    return out;
}

namespace {

int exit_for(ErrorKind kind, int stage_default) {
    // Anything that stops the inputs from loading is a validation failure,
    // including an unreadable config file.
    if (stage_default == exit_code::kValidation) return stage_default;
    switch (kind) {
        case ErrorKind::IoError: return exit_code::kIo;
        case ErrorKind::NumericalBlowup:
        case ErrorKind::MismatchedTimeBase: return exit_code::kSimulation;
        default: return stage_default;
    }
}

void write_text(const std::filesystem::path& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + file.string() + "'");
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "write failed for '" + file.string() + "'");
}

void make_dir(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create '" + dir.string() + "': " + ec.message());
}

class Runner {
public:
    Runner(const PipelineOptions& opts, PipelineSummary& summary, RunLog& log, std::filesystem::path root)
        : opts_(opts), summary_(summary), log_(log), root_(std::move(root)) {}

    void validate(bool check_function) {
        log_.info("validate", "config " + opts_.config_file.string());
        log_.info("validate", "structures " + opts_.structures_dir.string());
        bundle_ = std::make_unique<ValidatedBundle>(load_bundle(opts_.config_file, opts_.structures_dir));
        const auto& b = *bundle_;
        summary_.steps = b.step_count();
        summary_.memristors = b.device_count();
        log_.info("validate", "topology " + b.topology.name + ", " + std::to_string(b.step_count()) + " steps, " +
                                  std::to_string(b.device_count()) + " memristors, " +
                                  std::to_string(b.config.combination_count()) + " combinations");
        make_dir(root_ / "tmp");
        write_text(root_ / "tmp" / "program.txt", render_algorithm(b.program));
        write_text(root_ / "tmp" / "parameters.json", to_json(b.params));
        if (!check_function) return;

        auto [state, history] = calc_algorithm(b);
        write_text(root_ / "State_History.txt", render_history(history));
        const auto report = check_equivalence(state, b.config);
        summary_.functional_pass = report.passed;
        for (const auto& m : report.mismatches) {
            log_.info("validate", "mismatch output " + m.output + " combination " + std::to_string(m.combination) +
                                      " expected " + std::to_string(m.expected) + " got " + std::to_string(m.got));
        }
        if (!report.passed) {
            throw Failure{exit_code::kFunctional,
                          std::to_string(report.mismatches.size()) + " output bits differ from output_states"};
        }
        log_.info("validate", "state model matches every expected output");
    }

    void control() {
        const auto schedule = eval_algo(*bundle_);
        const auto files = write_pwm_csv(schedule, root_ / "PWM_output");
        log_.info("control", "wrote " + std::to_string(files.size()) + " waveform files, cycle time " +
                                 format_double(schedule.cycle_time) + " s");
    }

    void simulate() {
        const auto& b = *bundle_;
        const auto schedule = eval_algo(b);
        const auto [state, history] = calc_algorithm(b);
        make_dir(root_ / "netlists");
        if (opts_.record_waveforms) make_dir(root_ / "Waveforms");

        TransientOptions topts;
        topts.substeps_per_cycle = opts_.substeps;
        topts.record = true;

        std::string energy_csv = "combination,total_J";
        for (const auto& n : b.config.memristors) energy_csv += "," + n + "_J";
        for (std::size_t k = 0; k < b.section_count(); ++k) energy_csv += ",RG" + std::to_string(k) + "_J";
        energy_csv += "\n";

        bool agree = true;
        double energy_sum = 0.0;
        for (std::size_t k = 0; k < b.config.combination_count(); ++k) {
            const auto w0 = nominal_initial_state(b, k);
            const auto trace = run_transient(b, schedule, w0, topts);
            const auto energy = calculate_energy(trace);
            energy_sum += energy.total;
            energy_csv += std::to_string(k) + "," + format_double(energy.total);
            for (double e : energy.per_device) energy_csv += "," + format_double(e);
            for (double e : energy.per_ground) energy_csv += "," + format_double(e);
            energy_csv += "\n";

            const std::string tag = "nominal_k" + std::to_string(k);
            if (opts_.record_waveforms) write_trace_csv(trace, root_ / "Waveforms" / (tag + ".csv"));
            if (b.step_count() > 0) {
                write_text(root_ / "netlists" / (tag + ".net"),
                           render_netlist(b, schedule, w0, tag + " (" + b.config.algorithm_file + ")", opts_.substeps));
            }
            for (std::size_t d = 0; d < b.device_count(); ++d) {
                const bool bit = state.vectors[d].get(k);
                const LogicValue got = threshold_logic(trace.final_w[d]);
                const bool is_output = std::find(b.config.outputs.begin(), b.config.outputs.end(),
                                                 b.config.memristors[d]) != b.config.outputs.end();
                if (is_output && is_incorrect(got, bit)) {
                    agree = false;
                    log_.info("simulate", "circuit disagrees on " + b.config.memristors[d] + " at combination " +
                                              std::to_string(k) + ": w=" + format_double(trace.final_w[d]) +
                                              ", state model " + std::to_string(bit));
                }
            }
        }
        write_text(root_ / "energy.csv", energy_csv);
        summary_.circuit_pass = agree;
        const auto combos = static_cast<double>(b.config.combination_count());
        summary_.mean_energy = energy_sum / combos;
        log_.info("simulate", "mean energy per combination " + format_double(energy_sum / combos) + " J");
        if (!agree) throw Failure{exit_code::kFunctional, "circuit outputs disagree with the state model"};
        log_.info("simulate", "thresholded outputs agree with the state model");
    }

    void deviate() {
        const auto& b = *bundle_;
        const auto grid = DeviationGrid::uniform(opts_.deviation_max, opts_.deviation_step);
        std::string levels;
        for (double p : grid.levels) levels += (levels.empty() ? "" : " ") + level_label(p);
        log_.info("deviate", "levels " + levels);
        DeviationOptions dopts;
        dopts.substeps_per_cycle = opts_.substeps;
        dopts.threads = opts_.threads;
        const auto results = evaluate_deviation(b, grid, dopts);
        log_.info("deviate", std::to_string(results.run_count) + " transient runs");

        const auto dir = root_ / "deviation_results";
        std::error_code ec;
        std::filesystem::remove_all(dir, ec);
        write_deviation_results(results, dir);
        write_range_table(summarize_ranges(results), root_ / "deviation_range.txt");
        const auto table = classify(results, b.config);
        for (const auto& row : table.rows) {
            log_.info("deviate", "output " + row.output + " level " + level_label(row.level) + ": " +
                                     std::to_string(row.incorrect) + "/" + std::to_string(row.total) + " incorrect");
        }
        summary_.max_clean_level = table.max_clean_level();
    }

    void plot() {
        const auto& b = *bundle_;
        const auto dir = root_ / "deviation_results";
        if (!std::filesystem::is_directory(dir)) {
            throw Error(ErrorKind::IoError, "plot needs deviation results; run the deviate stage first");
        }
        const auto results = read_deviation_results(dir, b.config);
        if (results.samples.empty()) throw Error(ErrorKind::IoError, "deviation results are empty");
        const auto images = root_ / "Images";
        std::error_code ec;
        std::filesystem::remove_all(images, ec);
        make_dir(images);

        const auto ranges = summarize_ranges(results);
        plot_deviation_range(ranges, images / "range.svg", opts_.figure);
        plot_deviation_scatter(results, b.config, images, opts_.figure);
        const auto table = classify(results, b.config);
        if (!summary_.max_clean_level) summary_.max_clean_level = table.max_clean_level();

        // Envelope for the all-ones combination at the level nearest 0.2.
        const std::size_t k = b.config.combination_count() - 1;
        double level = results.levels.front();
        for (double p : results.levels) {
            if (std::fabs(p - 0.2) < std::fabs(level - 0.2)) level = p;
        }
        const auto schedule = eval_algo(b);
        TransientOptions topts;
        topts.substeps_per_cycle = opts_.substeps;
        const auto nominal = run_transient(b, schedule, nominal_initial_state(b, k), topts);
        std::vector<TransientTrace> corners;
        for (std::uint32_t c = 0; c < corner_count(level, b.config.inputs.size()); ++c) {
            corners.push_back(run_transient(b, schedule, deviated_initial_state(b, k, c, level), topts));
        }
        std::vector<std::string> outputs;
        for (const auto& [name, bits] : b.config.output_states) outputs.push_back(name);
        plot_waveforms_with_deviation(nominal, corners, outputs, images, opts_.figure);
        log_.info("plot", "waveform envelope for combination " + std::to_string(k) + " at deviation " +
                              level_label(level));
        log_.info("plot", "figures written to Images/");
    }

    struct Failure {
        int code;
        std::string message;
    };

private:
    const PipelineOptions& opts_;
    PipelineSummary& summary_;
    RunLog& log_;
    std::filesystem::path root_;
    std::unique_ptr<ValidatedBundle> bundle_;
};

}  // namespace

PipelineSummary run_pipeline(const PipelineOptions& opts) {
    PipelineSummary summary;
    summary.algorithm = opts.config_file.stem().string();
    summary.output_dir = opts.out_dir / summary.algorithm;

    std::unique_ptr<RunLog> log;
    try {
        make_dir(summary.output_dir);
        log = std::make_unique<RunLog>(summary.output_dir / "run.log", opts.deterministic_log);
    } catch (const Error& e) {
        summary.exit_code = exit_code::kIo;
        summary.message = e.what();
        return summary;
    }

    Runner runner(opts, summary, *log, summary.output_dir);
    const auto run_stage = [&](Stage stage, int default_code, auto&& body) {
        const std::string name(to_string(stage));
        log->start(name);
        try {
            body();
        } catch (const Runner::Failure& f) {
            summary.exit_code = f.code;
            summary.message = name + ": " + f.message;
        } catch (const Error& e) {
            summary.exit_code = exit_for(e.kind(), default_code);
            summary.message = name + ": " + e.what();
        } catch (const std::exception& e) {
            summary.exit_code = default_code;
            summary.message = name + ": " + e.what();
        }
        if (summary.exit_code != exit_code::kOk) {
            log->info(name, summary.message);
            log->end(name, "failed (exit " + std::to_string(summary.exit_code) + ")");
            return false;
        }
        log->end(name, "ok");
        return true;
    };

    // The bundle is needed by every stage, so loading always runs; the
    // functional check only when the validate stage is selected.
    const bool check = opts.stages.count(Stage::Validate) > 0;
    if (!run_stage(Stage::Validate, exit_code::kValidation, [&] { runner.validate(check); })) return summary;
    if (opts.stages.count(Stage::Control) &&
        !run_stage(Stage::Control, exit_code::kIo, [&] { runner.control(); })) {
        return summary;
    }
    if (opts.stages.count(Stage::Simulate) &&
        !run_stage(Stage::Simulate, exit_code::kSimulation, [&] { runner.simulate(); })) {
        return summary;
    }
    if (opts.stages.count(Stage::Deviate) &&
        !run_stage(Stage::Deviate, exit_code::kSimulation, [&] { runner.deviate(); })) {
        return summary;
    }
    if (opts.stages.count(Stage::Plot) && !run_stage(Stage::Plot, exit_code::kIo, [&] { runner.plot(); })) {
        return summary;
    }
    summary.message = "ok";
    return summary;
}

bool SoaReport::all_passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const PipelineSummary& r) { return r.exit_code == 0; });
}

SoaReport evaluate_soa(const std::filesystem::path& algorithms_dir, const PipelineOptions& base) {
    SoaReport report;
    std::vector<std::filesystem::path> configs;
    if (std::filesystem::is_directory(algorithms_dir)) {
        for (const auto& entry : std::filesystem::directory_iterator(algorithms_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".json") configs.push_back(entry.path());
        }
    }
    std::sort(configs.begin(), configs.end());
    for (const auto& cfg : configs) {
        PipelineOptions opts = base;
        opts.config_file = cfg;
        report.rows.push_back(run_pipeline(opts));
    }

    const auto opt = [](const auto& v) { return v ? format_double(static_cast<double>(*v)) : std::string(); };
    const auto flag = [](const std::optional<bool>& v) { return v ? (*v ? "pass" : "fail") : ""; };
    std::string csv = "algorithm,status,exit_code,steps,memristors,functional,circuit,energy_J,max_clean_deviation\n";
    for (const auto& r : report.rows) {
        csv += r.algorithm + "," + (r.exit_code == 0 ? "ok" : "failed") + "," + std::to_string(r.exit_code) + "," +
               std::to_string(r.steps) + "," + std::to_string(r.memristors) + "," + flag(r.functional_pass) + "," +
               flag(r.circuit_pass) + "," + opt(r.mean_energy) + "," + opt(r.max_clean_level) + "\n";
    }
    make_dir(base.out_dir);
    report.table = base.out_dir / "soa_summary.csv";
    write_text(report.table, csv);
    return report;
}

}  // namespace atomic
