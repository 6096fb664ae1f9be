#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace atomic {

enum class ErrorKind {
    // Algorithm text
    EmptyProgram,
    MalformedToken,
    SectionCountMismatch,
    DuplicateDeviceInStep,
    IndexOutOfRange,
    // Config / topology / parameter JSON
    MalformedJson,
    MissingKey,
    UnknownKey,
    BadOutputVectorLength,
    UnknownTopologyName,
    RoleReferencesUndeclaredMemristor,
    InvalidTopology,
    InvalidParameters,
    // Cross validation
    StepCountMismatch,
    TopologyMismatch,
    ElectricalPreconditionViolated,
    // Evaluation
    UnknownOutputName,
    NumericalBlowup,
    MismatchedTimeBase,
    IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-checkable kind.
/// Parse failures additionally carry a 1-based line/column (0 when unknown).
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::size_t line = 0, std::size_t column = 0);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] std::size_t column() const noexcept { return column_; }

private:
    ErrorKind kind_;
    std::size_t line_;
    std::size_t column_;
};

}  // namespace atomic
