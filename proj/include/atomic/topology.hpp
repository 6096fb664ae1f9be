#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace atomic {

struct Section {
    std::size_t id = 0;
    std::vector<std::string> members;
    double ground_resistance = 0.0;  // R_G in ohms
};

enum class SwitchRole {
    Device,  // series switch of one memristor
    Ground,  // shorts a section node to ground for FALSE
    Bridge,  // joins two section nodes for cross-section IMPLY
};

struct SwitchWiring {
    std::string name;
    SwitchRole role = SwitchRole::Device;
    std::string device;          // Device role only
    std::size_t section = 0;     // Device, Ground; first section of a Bridge
    std::size_t other_section = 0;  // Bridge only
};

struct TopologySpec {
    std::string name;
    std::vector<Section> sections;
    std::vector<SwitchWiring> switches;

    [[nodiscard]] std::optional<std::size_t> section_of(std::string_view device) const;
    [[nodiscard]] const SwitchWiring* find_switch(std::string_view name) const;
};

TopologySpec parse_topology(std::string_view json_text);

std::string device_switch_name(std::string_view device);
std::string ground_switch_name(std::size_t section);
std::string bridge_switch_name(std::size_t a, std::size_t b);

}  // namespace atomic
