#include "atomic/transient.hpp"

#include "atomic/errors.hpp"
#include "atomic/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

namespace atomic {

namespace {

struct Net {
    std::vector<std::size_t> sections;
    std::vector<std::size_t> devices;  // driven and connected
    std::vector<double> volts;
    std::size_t ground_section = 0;    // whose R_G carries the current
    double r_g = 0.0;
    bool grounded = false;
};

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

std::vector<Net> nets_for_step(const ValidatedBundle& bundle, const WaveformSchedule& sch, std::size_t s) {
    const auto& topo = bundle.topology;
    const std::size_t n_sec = topo.sections.size();
    std::vector<std::size_t> parent(n_sec);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::vector<bool> grounded(n_sec, false);

    for (std::size_t k = 0; k < sch.switch_names.size(); ++k) {
        if (!sch.switch_states[k][s]) continue;
        const SwitchWiring* sw = topo.find_switch(sch.switch_names[k]);
        if (!sw) continue;
        if (sw->role == SwitchRole::Bridge) {
            parent[find_root(parent, sw->section)] = find_root(parent, sw->other_section);
        } else if (sw->role == SwitchRole::Ground) {
            grounded[sw->section] = true;
        }
    }

    std::vector<Net> nets;
    std::vector<std::size_t> net_of_root(n_sec, n_sec);
    for (std::size_t sec = 0; sec < n_sec; ++sec) {
        const std::size_t r = find_root(parent, sec);
        if (net_of_root[r] == n_sec) {
            net_of_root[r] = nets.size();
            nets.emplace_back();
        }
        Net& net = nets[net_of_root[r]];
        net.sections.push_back(sec);
        net.grounded = net.grounded || grounded[sec];
    }

    for (std::size_t d = 0; d < sch.device_names.size(); ++d) {
        const DriveLevel& level = sch.device_levels[d][s];
        if (!level) continue;
        const auto sw = std::find(sch.switch_names.begin(), sch.switch_names.end(),
                                  device_switch_name(sch.device_names[d]));
        if (sw != sch.switch_names.end() &&
            !sch.switch_states[static_cast<std::size_t>(sw - sch.switch_names.begin())][s]) {
            continue;
        }
        Net& net = nets[net_of_root[find_root(parent, bundle.device_section[d])]];
        net.devices.push_back(d);
        net.volts.push_back(*level);
    }

    // A merged node keeps only the R_G of the section holding the most
    // positively driven device (the IMPLY target).
    for (Net& net : nets) {
        net.ground_section = net.sections.front();
        double best = -INFINITY;
        for (std::size_t i = 0; i < net.devices.size(); ++i) {
            if (net.volts[i] > best) {
                best = net.volts[i];
                net.ground_section = bundle.device_section[net.devices[i]];
            }
        }
        net.r_g = topo.sections[net.ground_section].ground_resistance;
    }
    return nets;
}

}  // namespace

TransientTrace run_transient(const ValidatedBundle& bundle, const WaveformSchedule& schedule,
                             std::span<const double> initial_w, const TransientOptions& options) {
    const std::size_t n_dev = bundle.device_count();
    const std::size_t n_sec = bundle.section_count();
    if (initial_w.size() != n_dev) {
        throw Error(ErrorKind::InvalidParameters, "initial state needs one value per memristor");
    }
    for (double w : initial_w) {
        if (!(w >= 0.0 && w <= 1.0)) throw Error(ErrorKind::InvalidParameters, "initial w must lie in [0, 1]");
    }
    if (options.substeps_per_cycle == 0) {
        throw Error(ErrorKind::InvalidParameters, "substeps_per_cycle must be positive");
    }
    if (schedule.device_names != bundle.config.memristors) {
        throw Error(ErrorKind::TopologyMismatch, "schedule devices differ from the bundle");
    }

    const auto& p = bundle.params;
    const std::size_t subs = options.substeps_per_cycle;
    const double T = schedule.cycle_time;
    const double dt = T / static_cast<double>(subs);

    TransientTrace trace;
    trace.cycle_time = T;
    trace.device_names = bundle.config.memristors;
    std::vector<double> w(initial_w.begin(), initial_w.end());

    const std::size_t total = schedule.step_count * (subs + 1);
    if (options.record) {
        trace.time.reserve(total);
        trace.step_of_sample.reserve(total);
        trace.w.assign(n_dev, {});
        trace.device_power.assign(n_dev, {});
        trace.node_voltage.assign(n_sec, {});
        trace.ground_power.assign(n_sec, {});
        for (auto& v : trace.w) v.reserve(total);
        for (auto& v : trace.device_power) v.reserve(total);
        for (auto& v : trace.node_voltage) v.reserve(total);
        for (auto& v : trace.ground_power) v.reserve(total);
    }

    std::vector<double> rate(n_dev, 0.0);
    std::vector<double> power(n_dev, 0.0);
    std::vector<double> node(n_sec, 0.0);
    std::vector<double> gpower(n_sec, 0.0);
    std::vector<double> res;

    for (std::size_t s = 0; s < schedule.step_count; ++s) {
        const std::vector<Net> nets = nets_for_step(bundle, schedule, s);
        for (std::size_t j = 0; j <= subs; ++j) {
            std::fill(rate.begin(), rate.end(), 0.0);
            std::fill(power.begin(), power.end(), 0.0);
            std::fill(node.begin(), node.end(), 0.0);
            std::fill(gpower.begin(), gpower.end(), 0.0);
            for (const Net& net : nets) {
                res.resize(net.devices.size());
                double num = 0.0;
                double den = 1.0 / net.r_g;
                for (std::size_t i = 0; i < net.devices.size(); ++i) {
                    res[i] = resistance(w[net.devices[i]], p.r_on, p.r_off, p.model.map);
                    num += net.volts[i] / res[i];
                    den += 1.0 / res[i];
                }
                double vg = 0.0;
                if (!net.grounded && !net.devices.empty()) vg = num / den;
                if (!std::isfinite(vg)) {
                    throw Error(ErrorKind::NumericalBlowup, "non-finite node voltage in step " + std::to_string(s + 1));
                }
                for (std::size_t sec : net.sections) node[sec] = vg;
                if (!net.grounded) gpower[net.ground_section] = vg * vg / net.r_g;
                for (std::size_t i = 0; i < net.devices.size(); ++i) {
                    const double v = net.volts[i] - vg;
                    power[net.devices[i]] = v * v / res[i];
                    rate[net.devices[i]] = dwdt(v, p.model);
                }
            }
            if (options.record) {
                const double t = j == subs ? static_cast<double>(s + 1) * T
                                           : static_cast<double>(s) * T + static_cast<double>(j) * dt;
                trace.time.push_back(t);
                trace.step_of_sample.push_back(static_cast<std::uint32_t>(s));
                for (std::size_t d = 0; d < n_dev; ++d) {
                    trace.w[d].push_back(w[d]);
                    trace.device_power[d].push_back(power[d]);
                }
                for (std::size_t k = 0; k < n_sec; ++k) {
                    trace.node_voltage[k].push_back(node[k]);
                    trace.ground_power[k].push_back(gpower[k]);
                }
            }
            if (j == subs) break;
            for (const Net& net : nets) {
                for (std::size_t d : net.devices) {
                    const double next = w[d] + dt * rate[d];
                    if (!std::isfinite(next)) {
                        throw Error(ErrorKind::NumericalBlowup,
                                    "non-finite state for '" + trace.device_names[d] + "' in step " +
                                        std::to_string(s + 1));
                    }
                    w[d] = std::clamp(next, 0.0, 1.0);
                }
            }
        }
    }
    trace.final_w = std::move(w);
    return trace;
}

void write_trace_csv(const TransientTrace& trace, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write '" + file.string() + "'");
    out << "time_s";
    for (const auto& n : trace.device_names) out << ',' << n << "_w";
    for (std::size_t k = 0; k < trace.node_voltage.size(); ++k) out << ",vG_s" << k;
    out << '\n';
    std::string row;
    for (std::size_t i = 0; i < trace.sample_count(); ++i) {
        row = format_double(trace.time[i]);
        for (const auto& series : trace.w) {
            row += ',';
            row += format_double(series[i]);
        }
        for (const auto& series : trace.node_voltage) {
            row += ',';
            row += format_double(series[i]);
        }
        row += '\n';
        out << row;
    }
    if (!out) throw Error(ErrorKind::IoError, "write failed for '" + file.string() + "'");
}

}  // namespace atomic
