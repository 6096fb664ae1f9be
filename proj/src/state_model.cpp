#include "atomic/state_model.hpp"

#include "atomic/errors.hpp"

namespace atomic {

namespace {

void require_index(const StateModel& state, DeviceIndex i) {
    if (i >= state.vectors.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "device index " + std::to_string(i) + " out of range");
    }
}

}  // namespace

StateModel StateModel::initial(const ConfigSpec& config) {
    StateModel state;
    state.n_inputs = config.inputs.size();
    state.names = config.memristors;
    const std::size_t combos = state.combination_count();
    state.vectors.assign(config.memristors.size(), BitVector(combos));
    for (std::size_t j = 0; j < config.inputs.size(); ++j) {
        BitVector& column = state.vectors[config.require_index(config.inputs[j])];
        for (std::size_t k = 0; k < combos; ++k) {
            column.set(k, input_bit(k, j, state.n_inputs));
        }
    }
    return state;
}

const BitVector& StateModel::at(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) return vectors[i];
    }
    throw Error(ErrorKind::UnknownOutputName, "no memristor named '" + name + "'");
}

StateModel imply_op(StateModel state, DeviceIndex src, DeviceIndex dst) {
    require_index(state, src);
    require_index(state, dst);
    const BitVector source = state.vectors[src];
    state.vectors[dst].imply_from(source);
    return state;
}

StateModel false_op(StateModel state, const std::vector<DeviceIndex>& targets) {
    for (DeviceIndex t : targets) require_index(state, t);
    for (DeviceIndex t : targets) state.vectors[t].clear();
    return state;
}

void apply_step(StateModel& state, const Step& step) {
    // Disjoint device sets make in-place sequential application equal to a
    // simultaneous update.
    for (const auto& op : step) {
        if (const auto* imp = std::get_if<ImplyOp>(&op)) {
            require_index(state, imp->src);
            require_index(state, imp->dst);
            state.vectors[imp->dst].imply_from(state.vectors[imp->src]);
        } else if (const auto* f = std::get_if<FalseOp>(&op)) {
            for (DeviceIndex t : f->targets) require_index(state, t);
            for (DeviceIndex t : f->targets) state.vectors[t].clear();
        }
    }
}

std::pair<StateModel, StateHistory> calc_algorithm(const ConfigSpec& config, const AlgorithmProgram& program) {
    StateModel state = StateModel::initial(config);
    StateHistory history;
    history.names = state.names;
    history.entries.push_back({0, "", state.vectors});
    for (std::size_t s = 0; s < program.steps.size(); ++s) {
        apply_step(state, program.steps[s]);
        history.entries.push_back({s + 1, render_step(program.steps[s]), state.vectors});
    }
    return {std::move(state), std::move(history)};
}

std::pair<StateModel, StateHistory> calc_algorithm(const ValidatedBundle& bundle) {
    return calc_algorithm(bundle.config, bundle.program);
}

ValidationReport check_equivalence(const StateModel& final_state, const ConfigSpec& config) {
    ValidationReport report;
    for (const auto& [name, expected] : config.output_states) {
        const BitVector& got = final_state.at(name);
        for (std::size_t k = 0; k < expected.size(); ++k) {
            if (got.get(k) != expected.get(k)) {
                report.mismatches.push_back({name, k, expected.get(k), got.get(k)});
            }
        }
    }
    report.passed = report.mismatches.empty();
    return report;
}

std::string render_history(const StateHistory& history) {
    std::string out;
    for (std::size_t e = 0; e < history.entries.size(); ++e) {
        const auto& entry = history.entries[e];
        if (e > 0) out += '\n';
        out += "step " + std::to_string(entry.step) + ":";
        if (!entry.operations.empty()) out += " " + entry.operations;
        out += '\n';
        for (std::size_t i = 0; i < history.names.size(); ++i) {
            out += history.names[i] + ": " + entry.snapshot[i].to_string() + '\n';
        }
    }
    return out;
}

}  // namespace atomic
