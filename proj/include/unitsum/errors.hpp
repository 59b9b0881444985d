#pragma once

#include <stdexcept>
#include <string>

namespace unitsum {

enum class ErrorCode {
    NotSquarefree,
    NotRealQuadratic,
    InvalidElement,
    FieldMismatch,
    NotAUnit,
    TooManyTerms,
    PreconditionViolated,
    KTooSmall,
    BudgetExceeded,
    InvalidArgument,
};

const char* to_string(ErrorCode code);

/* Every failure raised by the library carries one of the codes above so
 * callers (the CLI in particular) can map it without parsing messages. */
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

inline const char* to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::NotRealQuadratic: return "NotRealQuadratic";
    case ErrorCode::InvalidElement: return "InvalidElement";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::TooManyTerms: return "TooManyTerms";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace unitsum
