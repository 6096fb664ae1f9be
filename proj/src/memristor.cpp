#include "atomic/memristor.hpp"

#include <cmath>

namespace atomic {

std::string_view to_string(ResistanceMap map) {
    return map == ResistanceMap::Linear ? "linear" : "exponential";
}

std::string_view to_string(LogicValue value) {
    switch (value) {
        case LogicValue::Zero: return "0";
        case LogicValue::One: return "1";
        case LogicValue::Undefined: break;
    }
    return "undefined";
}

double dwdt(double v, const MemristorModelParams& p) {
    if (v >= p.v_on) {
        return p.k_on * std::pow((v - p.v_on) / p.v_on, p.alpha);
    }
    if (v <= p.v_off) {
        return -p.k_off * std::pow((v - p.v_off) / p.v_off, p.alpha);
    }
    return 0.0;
}

double resistance(double w, double r_on, double r_off, ResistanceMap map) {
    if (map == ResistanceMap::Linear) {
        return r_off + w * (r_on - r_off);
    }
    return r_off * std::pow(r_on / r_off, w);
}

LogicValue threshold_logic(double w) {
    if (w >= 2.0 / 3.0) return LogicValue::One;
    if (w <= 1.0 / 3.0) return LogicValue::Zero;
    return LogicValue::Undefined;
}

double solve_section_node(std::span<const NodeBranch> branches, double r_g) {
    double num = 0.0;
    double den = 1.0 / r_g;
    bool any = false;
    for (const auto& b : branches) {
        if (!b.drive) continue;
        num += *b.drive / b.resistance;
        den += 1.0 / b.resistance;
        any = true;
    }
    return any ? num / den : 0.0;
}

}  // namespace atomic
