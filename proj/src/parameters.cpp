#include "atomic/parameters.hpp"

#include "atomic/errors.hpp"

#include <json.hpp>

#include <cmath>

namespace atomic {

namespace {

using nlohmann::ordered_json;

double number(const ordered_json& obj, const std::string& key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw Error(ErrorKind::MissingKey, "parameters lack key '" + key + "'");
    }
    if (!it->is_number()) {
        throw Error(ErrorKind::InvalidParameters, "parameter '" + key + "' must be a number");
    }
    return it->get<double>();
}

// Returns true when the rate is left to calibration.
bool rate(const ordered_json& model, const std::string& key, double& out) {
    const auto it = model.find(key);
    if (it == model.end() || (it->is_string() && it->get<std::string>() == "auto")) {
        return true;
    }
    if (!it->is_number()) {
        throw Error(ErrorKind::InvalidParameters, "model '" + key + "' must be a number or \"auto\"");
    }
    out = it->get<double>();
    return false;
}

void check_fields(const ImplyParameters& p) {
    const auto bad = [](const std::string& msg) { throw Error(ErrorKind::InvalidParameters, msg); };
    for (double v : {p.v_set, p.v_cond, p.v_reset, p.cycle_time, p.r_on, p.r_off, p.model.v_on, p.model.v_off,
                     p.model.k_on, p.model.k_off, p.model.alpha}) {
        if (!std::isfinite(v)) bad("parameters must be finite");
    }
    if (!(p.v_cond > 0.0 && p.v_cond < p.v_set)) {
        throw Error(ErrorKind::ElectricalPreconditionViolated, "need 0 < V_COND < V_SET");
    }
    if (!(p.v_reset < 0.0)) throw Error(ErrorKind::ElectricalPreconditionViolated, "need V_RESET < 0");
    if (!(p.r_on > 0.0 && p.r_on < p.r_off)) bad("need 0 < R_on < R_off");
    if (!(p.cycle_time > 0.0)) bad("need cycle_time > 0");
    if (!(p.model.v_on > 0.0)) bad("need v_on > 0");
    if (!(p.model.v_off < 0.0)) bad("need v_off < 0");
    if (!(p.model.k_on > 0.0 && p.model.k_off > 0.0)) bad("need k_on, k_off > 0");
    if (!(p.model.alpha >= 1.0)) bad("need alpha >= 1");
}

}  // namespace

void calibrate_rates(ImplyParameters& p, bool on, bool off) {
    // The rate does not depend on w, so a full swing at constant drive takes
    // exactly 1 / |dw/dt|.
    const double half = 0.5 * p.cycle_time;
    if (on) {
        const double over = (p.v_set - p.model.v_on) / p.model.v_on;
        if (!(over > 0.0)) {
            throw Error(ErrorKind::ElectricalPreconditionViolated, "V_SET must exceed v_on to calibrate k_on");
        }
        p.model.k_on = 1.0 / (half * std::pow(over, p.model.alpha));
    }
    if (off) {
        const double over = (p.v_reset - p.model.v_off) / p.model.v_off;
        if (!(over > 0.0)) {
            throw Error(ErrorKind::ElectricalPreconditionViolated, "V_RESET must lie below v_off to calibrate k_off");
        }
        p.model.k_off = 1.0 / (half * std::pow(over, p.model.alpha));
    }
}

void check_electrical_preconditions(const ImplyParameters& p) {
    check_fields(p);
    const auto fail = [](const std::string& msg) { throw Error(ErrorKind::ElectricalPreconditionViolated, msg); };
    if (!(p.v_set - p.v_cond < p.model.v_on)) fail("need V_SET - V_COND < v_on");
    if (!(p.model.v_on < p.v_set)) fail("need v_on < V_SET");
    if (!(p.v_cond < p.model.v_on)) fail("need V_COND < v_on");
    if (!(p.v_reset < p.model.v_off)) fail("need V_RESET < v_off");
}

ImplyParameters default_imply_parameters() {
    ImplyParameters p;
    calibrate_rates(p);
    return p;
}

ImplyParameters parse_imply_parameters(std::string_view json_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::MalformedJson, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorKind::MalformedJson, "parameters must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key != "V_SET" && key != "V_COND" && key != "V_RESET" && key != "cycle_time" && key != "R_on" &&
            key != "R_off" && key != "model") {
            throw Error(ErrorKind::UnknownKey, "unexpected parameter key '" + key + "'");
        }
    }
    ImplyParameters p;
    p.v_set = number(doc, "V_SET");
    p.v_cond = number(doc, "V_COND");
    p.v_reset = number(doc, "V_RESET");
    p.cycle_time = number(doc, "cycle_time");
    p.r_on = number(doc, "R_on");
    p.r_off = number(doc, "R_off");

    const auto it = doc.find("model");
    if (it == doc.end() || !it->is_object()) {
        throw Error(ErrorKind::MissingKey, "parameters lack object 'model'");
    }
    const auto& model = *it;
    for (const auto& [key, value] : model.items()) {
        if (key != "v_on" && key != "v_off" && key != "k_on" && key != "k_off" && key != "alpha" &&
            key != "resistance_map") {
            throw Error(ErrorKind::UnknownKey, "unexpected model key '" + key + "'");
        }
    }
    p.model.v_on = number(model, "v_on");
    p.model.v_off = number(model, "v_off");
    p.model.alpha = number(model, "alpha");
    const bool auto_on = rate(model, "k_on", p.model.k_on);
    const bool auto_off = rate(model, "k_off", p.model.k_off);
    p.model.map = ResistanceMap::Exponential;
    if (const auto m = model.find("resistance_map"); m != model.end()) {
        const std::string name = m->is_string() ? m->get<std::string>() : "";
        if (name == "linear") {
            p.model.map = ResistanceMap::Linear;
        } else if (name != "exponential") {
            throw Error(ErrorKind::InvalidParameters, "resistance_map must be \"linear\" or \"exponential\"");
        }
    }
    calibrate_rates(p, auto_on, auto_off);
    check_electrical_preconditions(p);
    return p;
}

std::string to_json(const ImplyParameters& p) {
    ordered_json doc;
    doc["V_SET"] = p.v_set;
    doc["V_COND"] = p.v_cond;
    doc["V_RESET"] = p.v_reset;
    doc["cycle_time"] = p.cycle_time;
    doc["R_on"] = p.r_on;
    doc["R_off"] = p.r_off;
    doc["model"] = {{"v_on", p.model.v_on},   {"v_off", p.model.v_off}, {"k_on", p.model.k_on},
                    {"k_off", p.model.k_off}, {"alpha", p.model.alpha}, {"resistance_map", to_string(p.model.map)}};
    return doc.dump(2) + "\n";
}

}  // namespace atomic
