#include "atomic/topology.hpp"

#include "atomic/config.hpp"
#include "atomic/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace atomic {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::InvalidTopology, msg); }

const ordered_json& field(const ordered_json& obj, const std::string& key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw Error(ErrorKind::MissingKey, where + " lacks key '" + key + "'");
    }
    return *it;
}

std::size_t as_index(const ordered_json& v, const std::string& where) {
    if (!v.is_number_unsigned()) invalid(where + " must be a non-negative integer");
    return v.get<std::size_t>();
}

}  // namespace

std::optional<std::size_t> TopologySpec::section_of(std::string_view device) const {
    for (const auto& s : sections) {
        if (std::find(s.members.begin(), s.members.end(), device) != s.members.end()) return s.id;
    }
    return std::nullopt;
}

const SwitchWiring* TopologySpec::find_switch(std::string_view name) const {
    for (const auto& sw : switches) {
        if (sw.name == name) return &sw;
    }
    return nullptr;
}

std::string device_switch_name(std::string_view device) { return "s" + std::string(device); }

std::string ground_switch_name(std::size_t section) { return "g" + std::to_string(section); }

std::string bridge_switch_name(std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return "x" + std::to_string(a) + "_" + std::to_string(b);
}

TopologySpec parse_topology(std::string_view json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::MalformedJson, e.what());
    }
    if (!doc.is_object()) invalid("topology must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "name" && key != "sections" && key != "switches") {
            throw Error(ErrorKind::UnknownKey, "unexpected topology key '" + key + "'");
        }
    }

    TopologySpec topo;
    const auto& name = field(doc, "name", "topology");
    if (!name.is_string()) invalid("'name' must be a string");
    topo.name = name.get<std::string>();
    if (!is_known_topology(topo.name)) {
        throw Error(ErrorKind::UnknownTopologyName, "unknown topology '" + topo.name + "'");
    }

    const auto& sections = field(doc, "sections", "topology");
    if (!sections.is_array() || sections.empty()) invalid("'sections' must be a non-empty array");
    std::set<std::string> seen_members;
    for (std::size_t i = 0; i < sections.size(); ++i) {
        const auto& s = sections[i];
        const std::string where = "section " + std::to_string(i);
        if (!s.is_object()) invalid(where + " must be an object");
        Section sec;
        sec.id = as_index(field(s, "id", where), where + " id");
        if (sec.id != i) invalid(where + " must have id " + std::to_string(i));
        const auto& rg = field(s, "R_G", where);
        if (!rg.is_number() || !(rg.get<double>() > 0.0)) invalid(where + " needs R_G > 0");
        sec.ground_resistance = rg.get<double>();
        const auto& members = field(s, "members", where);
        if (!members.is_array()) invalid(where + " members must be an array");
        for (const auto& m : members) {
            if (!m.is_string()) invalid(where + " members must be strings");
            if (!seen_members.insert(m.get<std::string>()).second) {
                invalid("device '" + m.get<std::string>() + "' belongs to more than one section");
            }
            sec.members.push_back(m.get<std::string>());
        }
        topo.sections.push_back(std::move(sec));
    }

    const std::size_t n = topo.sections.size();
    if (topo.name == "Serial" && n != 1) invalid("Serial topology needs exactly 1 section");
    if (topo.name == "Semi-Serial" && n != 2) invalid("Semi-Serial topology needs exactly 2 sections");
    if (topo.name == "Semi-Parallel" && n < 2) invalid("Semi-Parallel topology needs at least 2 sections");

    const auto& switches = field(doc, "switches", "topology");
    if (!switches.is_object()) invalid("'switches' must be an object");
    for (const auto& [sw_name, wiring] : switches.items()) {
        const std::string where = "switch '" + sw_name + "'";
        if (!wiring.is_object()) invalid(where + " must be an object");
        if (seen_members.count(sw_name)) invalid(where + " shares its name with a device");
        SwitchWiring sw;
        sw.name = sw_name;
        if (wiring.contains("device")) {
            sw.role = SwitchRole::Device;
            if (!wiring["device"].is_string()) invalid(where + " device must be a string");
            sw.device = wiring["device"].get<std::string>();
            sw.section = as_index(field(wiring, "section", where), where + " section");
            const auto owner = topo.section_of(sw.device);
            if (!owner || *owner != sw.section) invalid(where + " points at a device outside its section");
        } else if (wiring.contains("ground")) {
            sw.role = SwitchRole::Ground;
            sw.section = as_index(wiring["ground"], where + " ground");
            if (sw.section >= n) invalid(where + " grounds a missing section");
        } else if (wiring.contains("bridge")) {
            sw.role = SwitchRole::Bridge;
            const auto& pair = wiring["bridge"];
            if (!pair.is_array() || pair.size() != 2) invalid(where + " bridge must list two sections");
            sw.section = as_index(pair[0], where + " bridge");
            sw.other_section = as_index(pair[1], where + " bridge");
            if (sw.section >= n || sw.other_section >= n || sw.section == sw.other_section) {
                invalid(where + " bridges invalid sections");
            }
            if (sw.section > sw.other_section) std::swap(sw.section, sw.other_section);
        } else {
            invalid(where + " needs one of 'device', 'ground' or 'bridge'");
        }
        topo.switches.push_back(std::move(sw));
    }
    return topo;
}

}  // namespace atomic
