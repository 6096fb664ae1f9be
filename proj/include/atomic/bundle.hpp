#pragma once

#include "atomic/algorithm.hpp"
#include "atomic/config.hpp"
#include "atomic/parameters.hpp"
#include "atomic/topology.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace atomic {

/// The four inputs after every cross-file check has passed.
struct ValidatedBundle {
    AlgorithmProgram program;
    ConfigSpec config;
    TopologySpec topology;
    ImplyParameters params;

    /// Section of each memristor, indexed like config.memristors.
    std::vector<std::size_t> device_section;
    /// bridge[step][section]: the section whose node is joined to this one
    /// for a cross-section IMPLY executing in it.
    std::vector<std::vector<std::optional<std::size_t>>> bridge;

    [[nodiscard]] std::size_t device_count() const { return config.memristors.size(); }
    [[nodiscard]] std::size_t section_count() const { return topology.sections.size(); }
    [[nodiscard]] std::size_t step_count() const { return program.steps.size(); }
};

ValidatedBundle cross_validate(AlgorithmProgram program, ConfigSpec config, TopologySpec topology,
                               ImplyParameters params);

std::string read_text_file(const std::filesystem::path& path);

/// Loads a config and everything it references. The algorithm path is
/// resolved relative to the config file; the topology and parameter files
/// come from structures_dir.
ValidatedBundle load_bundle(const std::filesystem::path& config_file, const std::filesystem::path& structures_dir);

}  // namespace atomic
