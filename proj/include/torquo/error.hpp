#pragma once

#include <stdexcept>
#include <string>

namespace torquo {

enum class ErrorCode {
    Parse,
    InvalidArgument,
    ZeroVector,
    DimensionMismatch,
    NotARelation,
    FanNotValid,
    FanNotComplete,
    ConeNotInFan,
    NotACircuit,
    WrongLocalStructure,
    NotPositive,
    ConditionBFailed,
    ClassNotInCone,
    InductionMismatch,
    InternalConsistency,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace torquo
