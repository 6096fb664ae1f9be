#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace atomic {

using DeviceIndex = std::size_t;

/// dst' = NOT src OR dst
struct ImplyOp {
    DeviceIndex src = 0;
    DeviceIndex dst = 0;
    friend bool operator==(const ImplyOp&, const ImplyOp&) = default;
};

/// Resets one to three distinct devices.
struct FalseOp {
    std::vector<DeviceIndex> targets;
    friend bool operator==(const FalseOp&, const FalseOp&) = default;
};

struct NopOp {
    friend bool operator==(const NopOp&, const NopOp&) = default;
};

using SectionOp = std::variant<ImplyOp, FalseOp, NopOp>;

/// One entry per topology section.
using Step = std::vector<SectionOp>;

struct AlgorithmProgram {
    std::size_t section_count = 1;
    std::vector<Step> steps;
    friend bool operator==(const AlgorithmProgram&, const AlgorithmProgram&) = default;
};

/// Parses the line-per-step text format. Lines starting with '#' and blank
/// lines are skipped; whitespace is insignificant inside tokens.
AlgorithmProgram parse_algorithm(std::string_view text, std::size_t section_count);

std::string render_op(const SectionOp& op);
std::string render_step(const Step& step);
std::string render_algorithm(const AlgorithmProgram& program);

/// Devices touched by an operation, in token order.
std::vector<DeviceIndex> devices_of(const SectionOp& op);

}  // namespace atomic
