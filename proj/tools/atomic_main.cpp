#include "atomic/errors.hpp"
#include "atomic/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

namespace {

// Accepts "--config_file=X" and "-- config_file=X" as spellings of
// "--config-file X".
std::vector<std::string> normalise_args(int argc, char** argv) {
    std::vector<std::string> out;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--" && i + 1 < argc && std::string(argv[i + 1]).rfind("config_file=", 0) == 0) {
            arg = std::string("--") + argv[++i];
        }
        if (arg.rfind("--config_file", 0) == 0) arg = "--config-file" + arg.substr(13);
        out.push_back(arg);
    }
    return out;
}

void print_summary(const atomic::PipelineSummary& s) {
    std::cout << s.algorithm << ": exit " << s.exit_code << " (" << s.message << ")\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Validate, simulate and stress-test memristive IMPLY algorithms"};
    app.require_subcommand(1);

    atomic::PipelineOptions opts;
    std::string stages = "v,c,s,d,p";
    bool no_waveforms = false;
    bool test_mode = false;
    std::string algorithms_dir = ATOMIC_DEFAULT_ALGORITHMS_DIR;

    const auto common = [&](CLI::App* cmd) {
        cmd->add_option("--out-dir", opts.out_dir, "Root of the output tree");
        cmd->add_option("--structures-dir", opts.structures_dir, "Topology and parameter files");
        cmd->add_option("--deviation-max", opts.deviation_max, "Largest deviation level")->check(CLI::Range(0.0, 0.999));
        cmd->add_option("--deviation-step", opts.deviation_step, "Deviation grid spacing")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--substeps", opts.substeps, "Integration substeps per cycle")->check(CLI::PositiveNumber);
        cmd->add_option("--threads", opts.threads, "Worker threads for deviation runs (0: all cores)");
        cmd->add_option("--figure-width", opts.figure.width, "Figure width in px")->check(CLI::PositiveNumber);
        cmd->add_option("--figure-height", opts.figure.height, "Panel height in px")->check(CLI::PositiveNumber);
        cmd->add_flag("--no-waveforms", no_waveforms, "Skip the per-combination waveform dumps");
        cmd->add_flag("--test-mode", test_mode, "Fixed log timestamps (also ATOMIC_TEST_MODE=1)");
    };

    auto* pipeline = app.add_subcommand("pipeline", "Run the pipeline for one algorithm");
    pipeline->add_option("--config-file", opts.config_file, "Algorithm configuration JSON")->required();
    pipeline->add_option("--stages", stages, "Comma separated subset of v,c,s,d,p");
    common(pipeline);

    auto* soa = app.add_subcommand("evaluate-soa", "Run the pipeline for every bundled algorithm");
    soa->add_option("--algorithms-dir", algorithms_dir, "Directory of algorithm configs");
    common(soa);

    const auto args = normalise_args(argc, argv);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : atomic::exit_code::kValidation;
    }

    const char* env = std::getenv("ATOMIC_TEST_MODE");
    opts.deterministic_log = test_mode || (env && std::string(env) == "1");
    opts.record_waveforms = !no_waveforms;

    if (*pipeline) {
        try {
            opts.stages = atomic::parse_stages(stages);
        } catch (const atomic::Error& e) {
            std::cerr << e.what() << "\n";
            return atomic::exit_code::kValidation;
        }
        const auto summary = atomic::run_pipeline(opts);
        print_summary(summary);
        return summary.exit_code;
    }

    const auto report = atomic::evaluate_soa(algorithms_dir, opts);
    if (report.rows.empty()) {
        std::cerr << "warning: no algorithm configs found in " << algorithms_dir << "\n";
    }
    for (const auto& row : report.rows) print_summary(row);
    std::cout << "summary: " << report.table.string() << "\n";
    return report.all_passed() ? 0 : 1;
}
