#include "atomic/errors.hpp"

namespace atomic {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::EmptyProgram: return "EmptyProgram";
        case ErrorKind::MalformedToken: return "MalformedToken";
        case ErrorKind::SectionCountMismatch: return "SectionCountMismatch";
        case ErrorKind::DuplicateDeviceInStep: return "DuplicateDeviceInStep";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::MalformedJson: return "MalformedJson";
        case ErrorKind::MissingKey: return "MissingKey";
        case ErrorKind::UnknownKey: return "UnknownKey";
        case ErrorKind::BadOutputVectorLength: return "BadOutputVectorLength";
        case ErrorKind::UnknownTopologyName: return "UnknownTopologyName";
        case ErrorKind::RoleReferencesUndeclaredMemristor: return "RoleReferencesUndeclaredMemristor";
        case ErrorKind::InvalidTopology: return "InvalidTopology";
        case ErrorKind::InvalidParameters: return "InvalidParameters";
        case ErrorKind::StepCountMismatch: return "StepCountMismatch";
        case ErrorKind::TopologyMismatch: return "TopologyMismatch";
        case ErrorKind::ElectricalPreconditionViolated: return "ElectricalPreconditionViolated";
        case ErrorKind::UnknownOutputName: return "UnknownOutputName";
        case ErrorKind::NumericalBlowup: return "NumericalBlowup";
        case ErrorKind::MismatchedTimeBase: return "MismatchedTimeBase";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message, std::size_t line, std::size_t column) {
    std::string out{to_string(kind)};
    if (line > 0) {
        out += " at " + std::to_string(line) + ":" + std::to_string(column);
    }
    out += ": " + message;
    return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(decorate(kind, message, line, column)), kind_(kind), line_(line), column_(column) {}

}  // namespace atomic
