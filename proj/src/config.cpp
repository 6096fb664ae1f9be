#include "atomic/config.hpp"

#include "atomic/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>

namespace atomic {

namespace {

using nlohmann::ordered_json;

const std::set<std::string> kKeys = {"topology", "algorithm", "memristors", "inputs", "work",
                                     "outputs",  "switches",  "steps",      "output_states"};

const ordered_json& require(const ordered_json& doc, const std::string& key) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        throw Error(ErrorKind::MissingKey, "config lacks key '" + key + "'");
    }
    return *it;
}

std::vector<std::string> string_list(const ordered_json& doc, const std::string& key) {
    const auto& node = require(doc, key);
    if (!node.is_array()) {
        throw Error(ErrorKind::MalformedJson, "'" + key + "' must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto& item : node) {
        if (!item.is_string()) {
            throw Error(ErrorKind::MalformedJson, "'" + key + "' must be an array of strings");
        }
        out.push_back(item.get<std::string>());
    }
    const std::set<std::string> unique(out.begin(), out.end());
    if (unique.size() != out.size()) {
        throw Error(ErrorKind::MalformedJson, "'" + key + "' lists a name twice");
    }
    return out;
}

void require_declared(const std::vector<std::string>& names, const std::set<std::string>& declared,
                      const std::string& role) {
    for (const auto& n : names) {
        if (!declared.count(n)) {
            throw Error(ErrorKind::RoleReferencesUndeclaredMemristor,
                        role + " '" + n + "' is not a declared memristor");
        }
    }
}

}  // namespace

bool is_known_topology(std::string_view name) {
    return name == "Serial" || name == "Semi-Serial" || name == "Semi-Parallel";
}

std::optional<std::size_t> ConfigSpec::index_of(std::string_view name) const {
    const auto it = std::find(memristors.begin(), memristors.end(), name);
    if (it == memristors.end()) return std::nullopt;
    return static_cast<std::size_t>(it - memristors.begin());
}

std::size_t ConfigSpec::require_index(std::string_view name) const {
    const auto idx = index_of(name);
    if (!idx) {
        throw Error(ErrorKind::UnknownOutputName, "no memristor named '" + std::string(name) + "'");
    }
    return *idx;
}

const BitVector& ConfigSpec::expected(std::string_view output) const {
    for (const auto& [name, bits] : output_states) {
        if (name == output) return bits;
    }
    throw Error(ErrorKind::UnknownOutputName, "no expected state for '" + std::string(output) + "'");
}

ConfigSpec parse_config(std::string_view json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::MalformedJson, e.what());
    }
    if (!doc.is_object()) {
        throw Error(ErrorKind::MalformedJson, "config must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (!kKeys.count(key)) {
            throw Error(ErrorKind::UnknownKey, "unexpected config key '" + key + "'");
        }
    }

    ConfigSpec cfg;
    const auto& topo = require(doc, "topology");
    const auto& algo = require(doc, "algorithm");
    if (!topo.is_string() || !algo.is_string()) {
        throw Error(ErrorKind::MalformedJson, "'topology' and 'algorithm' must be strings");
    }
    cfg.topology_name = topo.get<std::string>();
    cfg.algorithm_file = algo.get<std::string>();
    if (!is_known_topology(cfg.topology_name)) {
        throw Error(ErrorKind::UnknownTopologyName, "unknown topology '" + cfg.topology_name + "'");
    }
    cfg.memristors = string_list(doc, "memristors");
    cfg.inputs = string_list(doc, "inputs");
    cfg.work = string_list(doc, "work");
    cfg.outputs = string_list(doc, "outputs");
    cfg.switches = string_list(doc, "switches");

    const auto& steps = require(doc, "steps");
    if (!steps.is_number_unsigned()) {
        throw Error(ErrorKind::MalformedJson, "'steps' must be a non-negative integer");
    }
    cfg.steps = steps.get<std::size_t>();

    const std::set<std::string> declared(cfg.memristors.begin(), cfg.memristors.end());
    require_declared(cfg.inputs, declared, "input");
    require_declared(cfg.work, declared, "work memristor");
    require_declared(cfg.outputs, declared, "output");
    for (const auto& w : cfg.work) {
        if (std::find(cfg.inputs.begin(), cfg.inputs.end(), w) != cfg.inputs.end()) {
            throw Error(ErrorKind::RoleReferencesUndeclaredMemristor, "'" + w + "' is both input and work");
        }
    }
    for (const auto& s : cfg.switches) {
        if (declared.count(s)) {
            throw Error(ErrorKind::MalformedJson, "switch '" + s + "' shares its name with a memristor");
        }
    }
    if (cfg.inputs.size() > 20) {
        throw Error(ErrorKind::MalformedJson, "at most 20 inputs are supported");
    }

    const auto& states = require(doc, "output_states");
    if (!states.is_object()) {
        throw Error(ErrorKind::MalformedJson, "'output_states' must be an object");
    }
    const std::size_t expected_len = cfg.combination_count();
    for (const auto& [name, vec] : states.items()) {
        if (std::find(cfg.outputs.begin(), cfg.outputs.end(), name) == cfg.outputs.end()) {
            throw Error(ErrorKind::RoleReferencesUndeclaredMemristor,
                        "output_states names '" + name + "', which is not listed in outputs");
        }
        if (!vec.is_array()) {
            throw Error(ErrorKind::MalformedJson, "output state '" + name + "' must be an array");
        }
        if (vec.size() != expected_len) {
            throw Error(ErrorKind::BadOutputVectorLength,
                        "output state '" + name + "' has " + std::to_string(vec.size()) + " bits, expected " +
                            std::to_string(expected_len));
        }
        std::vector<int> bits;
        for (const auto& b : vec) {
            if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1)) {
                throw Error(ErrorKind::MalformedJson, "output state '" + name + "' must contain only 0 and 1");
            }
            bits.push_back(b.get<int>());
        }
        cfg.output_states.emplace_back(name, BitVector::from_bits(bits));
    }
    return cfg;
}

}  // namespace atomic
