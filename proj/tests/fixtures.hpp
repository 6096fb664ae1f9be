#pragma once

#include "atomic/bundle.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace fixture {

inline const std::filesystem::path kAlgorithms = ATOMIC_DEFAULT_ALGORITHMS_DIR;
inline const std::filesystem::path kStructures = ATOMIC_DEFAULT_STRUCTURES_DIR;

inline const std::vector<std::string> kExactAdders = {"serial_fa", "semi_serial_fa", "semi_parallel_fa"};
inline const std::vector<std::string> kAllAlgorithms = {"serial_fa", "semi_serial_fa", "semi_parallel_fa",
                                                        "serial_approx_fa"};

inline atomic::ValidatedBundle bundled(const std::string& name) {
    return atomic::load_bundle(kAlgorithms / (name + ".json"), kStructures);
}

/// Single-section bundle with devices m0..m{n-1}; the first n_inputs are
/// inputs and the program text is parsed against it.
inline atomic::ValidatedBundle serial_bundle(std::size_t n_devices, std::size_t n_inputs, const std::string& text,
                                             const atomic::ImplyParameters& params,
                                             double r_g = 680.0) {
    atomic::ConfigSpec cfg;
    cfg.topology_name = "Serial";
    cfg.algorithm_file = "inline.txt";
    atomic::TopologySpec topo;
    topo.name = "Serial";
    topo.sections.push_back({0, {}, r_g});
    for (std::size_t i = 0; i < n_devices; ++i) {
        const std::string name = "m" + std::to_string(i);
        cfg.memristors.push_back(name);
        (i < n_inputs ? cfg.inputs : cfg.work).push_back(name);
        cfg.switches.push_back("s" + name);
        topo.sections[0].members.push_back(name);
        topo.switches.push_back({"s" + name, atomic::SwitchRole::Device, name, 0, 0});
    }
    cfg.switches.push_back("g0");
    topo.switches.push_back({"g0", atomic::SwitchRole::Ground, "", 0, 0});
    atomic::AlgorithmProgram program;
    program.section_count = 1;
    if (!text.empty()) program = atomic::parse_algorithm(text, 1);
    cfg.steps = program.steps.size();
    return atomic::cross_validate(program, cfg, topo, params);
}

}  // namespace fixture
