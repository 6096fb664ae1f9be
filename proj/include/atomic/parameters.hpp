#pragma once

#include "atomic/memristor.hpp"

#include <string>
#include <string_view>

namespace atomic {

struct ImplyParameters {
    double v_set = 1.0;
    double v_cond = 0.93;
    double v_reset = -1.0;
    double cycle_time = 30e-6;
    double r_on = 1e4;
    double r_off = 1e9;
    MemristorModelParams model;
};

/// Parameter set shipped in structures/imply_parameters.json, rates calibrated.
ImplyParameters default_imply_parameters();

/// Reads the parameter file. "auto" (or an absent key) for k_on / k_off
/// requests calibration against the drive voltages.
ImplyParameters parse_imply_parameters(std::string_view json_text);

/// Chooses k_on so that a constant V_SET completes 0 -> 1 in half a cycle,
/// and k_off likewise for V_RESET and 1 -> 0.
void calibrate_rates(ImplyParameters& params, bool on = true, bool off = true);

/// Throws ElectricalPreconditionViolated unless the biasing can realise IMPLY
/// and FALSE: V_SET - V_COND < v_on < V_SET, V_COND < v_on, V_RESET < v_off.
void check_electrical_preconditions(const ImplyParameters& params);

std::string to_json(const ImplyParameters& params);

}  // namespace atomic
