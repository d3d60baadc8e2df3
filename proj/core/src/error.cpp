#include "twirlkey/error.hpp"

namespace twirlkey {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonHermitian: return "NonHermitian";
    case ErrorCode::kTraceNotOne: return "TraceNotOne";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kInvalidXParams: return "InvalidXParams";
    case ErrorCode::kNotUnitVector: return "NotUnitVector";
    case ErrorCode::kNotADistribution: return "NotADistribution";
    case ErrorCode::kEmptySiftedSet: return "EmptySiftedSet";
    case ErrorCode::kBranchConditionViolated: return "BranchConditionViolated";
    case ErrorCode::kConditionsNotMet: return "ConditionsNotMet";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace twirlkey
