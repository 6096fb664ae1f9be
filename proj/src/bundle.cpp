#include "atomic/bundle.hpp"

#include "atomic/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace atomic {

namespace {

[[noreturn]] void mismatch(const std::string& msg, std::size_t step = 0) {
    throw Error(ErrorKind::TopologyMismatch, msg, step, 0);
}

}  // namespace

ValidatedBundle cross_validate(AlgorithmProgram program, ConfigSpec config, TopologySpec topology,
                               ImplyParameters params) {
    if (config.topology_name != topology.name) {
        mismatch("config expects topology '" + config.topology_name + "' but got '" + topology.name + "'");
    }
    if (program.section_count != topology.sections.size()) {
        mismatch("program has " + std::to_string(program.section_count) + " sections, topology has " +
                 std::to_string(topology.sections.size()));
    }
    if (config.steps != program.steps.size()) {
        throw Error(ErrorKind::StepCountMismatch, "config declares " + std::to_string(config.steps) +
                                                      " steps, algorithm has " +
                                                      std::to_string(program.steps.size()));
    }

    const std::set<std::string> declared_switches(config.switches.begin(), config.switches.end());
    for (const auto& s : config.switches) {
        if (!topology.find_switch(s)) mismatch("switch '" + s + "' is not wired in topology " + topology.name);
    }
    const auto need_switch = [&](const std::string& name, std::size_t line) {
        if (!declared_switches.count(name)) mismatch("required switch '" + name + "' is not declared", line);
    };

    ValidatedBundle b;
    b.device_section.reserve(config.memristors.size());
    for (const auto& name : config.memristors) {
        const auto sec = topology.section_of(name);
        if (!sec) mismatch("memristor '" + name + "' has no slot in topology " + topology.name);
        b.device_section.push_back(*sec);
    }

    const std::size_t n_dev = config.memristors.size();
    const std::size_t n_sec = topology.sections.size();
    for (std::size_t s = 0; s < program.steps.size(); ++s) {
        const Step& step = program.steps[s];
        const std::size_t line = s + 1;
        if (step.size() != n_sec) {
            throw Error(ErrorKind::SectionCountMismatch, "step has wrong arity", line, 0);
        }
        std::vector<std::optional<std::size_t>> partner(n_sec);
        std::vector<bool> claimed(n_sec, false);
        std::set<DeviceIndex> used;
        for (std::size_t i = 0; i < n_sec; ++i) {
            for (DeviceIndex d : devices_of(step[i])) {
                if (d >= n_dev) {
                    throw Error(ErrorKind::IndexOutOfRange,
                                "device index " + std::to_string(d) + " but only " + std::to_string(n_dev) +
                                    " memristors are declared",
                                line, 0);
                }
                if (!used.insert(d).second) {
                    throw Error(ErrorKind::DuplicateDeviceInStep, "device used twice", line, 0);
                }
                need_switch(device_switch_name(config.memristors[d]), line);
            }
        }
        for (std::size_t i = 0; i < n_sec; ++i) {
            if (const auto* imp = std::get_if<ImplyOp>(&step[i])) {
                if (b.device_section[imp->dst] != i) {
                    mismatch("IMPLY target '" + config.memristors[imp->dst] + "' is outside section " +
                                 std::to_string(i),
                             line);
                }
                const std::size_t j = b.device_section[imp->src];
                if (j != i) {
                    if (!std::holds_alternative<NopOp>(step[j]) || claimed[j]) {
                        mismatch("cross-section IMPLY needs section " + std::to_string(j) + " to be idle", line);
                    }
                    claimed[j] = true;
                    partner[i] = j;
                    need_switch(bridge_switch_name(i, j), line);
                }
            } else if (const auto* f = std::get_if<FalseOp>(&step[i])) {
                for (DeviceIndex t : f->targets) {
                    if (b.device_section[t] != i) {
                        mismatch("FALSE target '" + config.memristors[t] + "' is outside section " +
                                     std::to_string(i),
                                 line);
                    }
                }
                need_switch(ground_switch_name(i), line);
            }
        }
        b.bridge.push_back(std::move(partner));
    }

    check_electrical_preconditions(params);

    b.program = std::move(program);
    b.config = std::move(config);
    b.topology = std::move(topology);
    b.params = params;
    return b;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::IoError, "cannot read '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ValidatedBundle load_bundle(const std::filesystem::path& config_file, const std::filesystem::path& structures_dir) {
    ConfigSpec config = parse_config(read_text_file(config_file));
    TopologySpec topo = parse_topology(read_text_file(structures_dir / (config.topology_name + ".json")));
    ImplyParameters params = parse_imply_parameters(read_text_file(structures_dir / "imply_parameters.json"));
    const auto algo_path = config_file.parent_path() / config.algorithm_file;
    AlgorithmProgram program = parse_algorithm(read_text_file(algo_path), topo.sections.size());
    return cross_validate(std::move(program), std::move(config), std::move(topo), params);
}

}  // namespace atomic
