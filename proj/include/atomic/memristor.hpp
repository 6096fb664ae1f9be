#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace atomic {

/// How the state variable maps onto resistance.
enum class ResistanceMap {
    Linear,       // R_off + w (R_on - R_off)
    Exponential,  // R_off (R_on / R_off)^w
};

std::string_view to_string(ResistanceMap map);

/// VTEAM-style threshold model.
struct MemristorModelParams {
    double v_on = 0.95;
    double v_off = -0.7;
    double k_on = 1.0;
    double k_off = 1.0;
    double alpha = 3.0;
    ResistanceMap map = ResistanceMap::Exponential;
};

/// Drive voltage of a device; nullopt means the device floats.
using DriveLevel = std::optional<double>;

enum class LogicValue { Zero, One, Undefined };

std::string_view to_string(LogicValue value);

/// State rate in 1/s. Positive v pushes w towards 1.
double dwdt(double v, const MemristorModelParams& params);

double resistance(double w, double r_on, double r_off, ResistanceMap map);

/// 1 at w >= 2/3, 0 at w <= 1/3, Undefined in between.
LogicValue threshold_logic(double w);

struct NodeBranch {
    DriveLevel drive;
    double resistance = 0.0;
};

/// Voltage of a section's common node, grounded through r_g. Floating
/// branches carry no current; returns 0 when nothing is driven.
double solve_section_node(std::span<const NodeBranch> branches, double r_g);

}  // namespace atomic
