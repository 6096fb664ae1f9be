#include "atomic/transient.hpp"

namespace atomic {

EnergyReport calculate_energy(const TransientTrace& trace) {
    EnergyReport report;
    report.per_device.assign(trace.device_power.size(), 0.0);
    report.per_ground.assign(trace.ground_power.size(), 0.0);
    std::size_t steps = 0;
    if (!trace.step_of_sample.empty()) steps = trace.step_of_sample.back() + 1;
    report.per_step.assign(steps, 0.0);

    // Only pairs inside one step are integrated; the duplicated boundary
    // sample keeps each cycle's discontinuous drive out of its neighbours.
    for (std::size_t i = 0; i + 1 < trace.sample_count(); ++i) {
        const std::uint32_t s = trace.step_of_sample[i];
        if (trace.step_of_sample[i + 1] != s) continue;
        const double h = 0.5 * (trace.time[i + 1] - trace.time[i]);
        double step_sum = 0.0;
        for (std::size_t d = 0; d < trace.device_power.size(); ++d) {
            const double e = h * (trace.device_power[d][i] + trace.device_power[d][i + 1]);
            report.per_device[d] += e;
            step_sum += e;
        }
        for (std::size_t k = 0; k < trace.ground_power.size(); ++k) {
            const double e = h * (trace.ground_power[k][i] + trace.ground_power[k][i + 1]);
            report.per_ground[k] += e;
            step_sum += e;
        }
        report.per_step[s] += step_sum;
    }
    for (double e : report.per_device) report.total += e;
    for (double e : report.per_ground) report.total += e;
    return report;
}

}  // namespace atomic
