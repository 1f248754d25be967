#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace perbeta {

enum class ErrorKind {
    ParseError,
    DegenerateInput,
    PreconditionViolated,
    ZeroInversion,
    NonInvertible,
    SearchBudgetExceeded,
    NoPath,
    InvalidPath,
    SizeBudgetExceeded,
    DensityViolated,
    ValidationFailed,
    BudgetTooSmall,
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ZeroInversion: return "ZeroInversion";
    case ErrorKind::NonInvertible: return "NonInvertible";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::NoPath: return "NoPath";
    case ErrorKind::InvalidPath: return "InvalidPath";
    case ErrorKind::SizeBudgetExceeded: return "SizeBudgetExceeded";
    case ErrorKind::DensityViolated: return "DensityViolated";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::BudgetTooSmall: return "BudgetTooSmall";
    }
    return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what)
{
    if (!condition)
        throw Error(kind, what);
}

} // namespace perbeta
