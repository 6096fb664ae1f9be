#pragma once

// Reference implementations written independently of the library code so
// tests compare two routes to the same answer.

#include "atomic/algorithm.hpp"
#include "atomic/bundle.hpp"
#include "atomic/memristor.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace oracle {

inline bool xor3(bool a, bool b, bool c) { return a != (b != c); }
inline bool majority(bool a, bool b, bool c) { return (a && b) || (a && c) || (b && c); }

/// Bits (a, b, c) of combination k, first input most significant.
inline void abc(std::size_t k, bool& a, bool& b, bool& c) {
    a = (k & 4) != 0;
    b = (k & 2) != 0;
    c = (k & 1) != 0;
}

/// Evaluates the program for one input combination on plain bools.
inline std::vector<bool> scalar_run(const atomic::AlgorithmProgram& program, std::size_t n_devices,
                                    const std::vector<std::size_t>& input_devices, std::size_t k) {
    std::vector<bool> m(n_devices, false);
    const std::size_t n = input_devices.size();
    for (std::size_t j = 0; j < n; ++j) m[input_devices[j]] = ((k >> (n - 1 - j)) & 1) != 0;
    for (const auto& step : program.steps) {
        for (const auto& op : step) {
            if (const auto* imp = std::get_if<atomic::ImplyOp>(&op)) {
                m[imp->dst] = !m[imp->src] || m[imp->dst];
            } else if (const auto* f = std::get_if<atomic::FalseOp>(&op)) {
                for (auto t : f->targets) m[t] = false;
            }
        }
    }
    return m;
}

/// A grammatical program: devices are never reused within a step.
inline atomic::AlgorithmProgram random_program(std::mt19937_64& rng, std::size_t n_devices, std::size_t steps,
                                               std::size_t sections) {
    atomic::AlgorithmProgram p;
    p.section_count = sections;
    std::uniform_int_distribution<int> kind(0, 2);
    for (std::size_t s = 0; s < steps; ++s) {
        std::vector<std::size_t> pool(n_devices);
        for (std::size_t i = 0; i < n_devices; ++i) pool[i] = i;
        std::shuffle(pool.begin(), pool.end(), rng);
        std::size_t next = 0;
        atomic::Step step;
        for (std::size_t sec = 0; sec < sections; ++sec) {
            const int k = kind(rng);
            const std::size_t left = n_devices - next;
            if (k == 0 && left >= 2) {
                step.push_back(atomic::ImplyOp{pool[next], pool[next + 1]});
                next += 2;
            } else if (k == 1 && left >= 1) {
                std::uniform_int_distribution<std::size_t> count(1, std::min<std::size_t>(3, left));
                const std::size_t c = count(rng);
                atomic::FalseOp f;
                for (std::size_t i = 0; i < c; ++i) f.targets.push_back(pool[next++]);
                step.push_back(f);
            } else {
                step.push_back(atomic::NopOp{});
            }
        }
        p.steps.push_back(std::move(step));
    }
    return p;
}

/// Common-node voltage by bisection on the KCL residual, which falls
/// monotonically in v.
inline double nodal_bisection(std::span<const atomic::NodeBranch> branches, double r_g) {
    const auto residual = [&](double v) {
        double r = -v / r_g;
        for (const auto& b : branches) {
            if (b.drive) r += (*b.drive - v) / b.resistance;
        }
        return r;
    };
    double lo = -1e3;
    double hi = 1e3;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace oracle
