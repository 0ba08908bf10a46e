#include "costbound/common.hpp"

namespace costbound {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::DegenerateSupport: return "DegenerateSupport";
    case ErrorKind::UncertaintyViolation: return "UncertaintyViolation";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::NearSingularSpectrum: return "NearSingularSpectrum";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

const NumericPolicy& default_policy() noexcept {
    static const NumericPolicy policy{};
    return policy;
}

void validate_cut(Cut cut, int n) {
    if (cut.s < 1 || cut.s > n - 1) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "cut s=" + std::to_string(cut.s) + " outside 1.." + std::to_string(n - 1));
    }
}

}  // namespace costbound
