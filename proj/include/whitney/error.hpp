#pragma once

#include <stdexcept>
#include <string>

namespace whitney {

enum class ErrorKind {
    InvalidArgument,
    InvalidRange,
    InvalidScale,
    InvalidLength,
    InvalidGeometry,
    InvalidFunction,
    UnsupportedOrder,
    DegenerateInput,
    RequiresGenericPoint,
    RequiresNonpole,
    RequiresOscillation,
    BoundViolation,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

    ErrorKind kind() const { return kind_; }
    /// Message without the kind prefix.
    const std::string& detail() const { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid-argument";
        case ErrorKind::InvalidRange: return "invalid-range";
        case ErrorKind::InvalidScale: return "invalid-scale";
        case ErrorKind::InvalidLength: return "invalid-length";
        case ErrorKind::InvalidGeometry: return "invalid-geometry";
        case ErrorKind::InvalidFunction: return "invalid-function";
        case ErrorKind::UnsupportedOrder: return "unsupported-order";
        case ErrorKind::DegenerateInput: return "degenerate-input";
        case ErrorKind::RequiresGenericPoint: return "requires-generic-point";
        case ErrorKind::RequiresNonpole: return "requires-nonpole";
        case ErrorKind::RequiresOscillation: return "requires-oscillation";
        case ErrorKind::BoundViolation: return "bound-violation";
    }
    return "unknown";
}

}  // namespace whitney
