#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fqs {

enum class ErrorCode {
    NotPrime,
    DegreeOutOfRange,
    FieldTooLarge,
    IncompatibleTower,
    ZeroOrConstant,
    InseparableInput,
    CharacteristicDividesDegree,
    SmoothnessUndecided,
    BasePointOnCurve,
    CharacteristicObstruction,
    GenericPointNotFound,
    HypothesisViolation,
    DegreeTooSmall,
    NotFoundWithinBudget,
    ConstraintViolation,
    ParseError,
    UnknownVariable,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it without parsing messages.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

   private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace fqs
