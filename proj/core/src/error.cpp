#include "chisum/error.hpp"

namespace chisum {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::EmptyDivisorSet: return "EmptyDivisorSet";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::BadExponent: return "BadExponent";
    case ErrorCode::TrivialCharacter: return "TrivialCharacter";
    case ErrorCode::WorkCapExceeded: return "WorkCapExceeded";
    case ErrorCode::ZeroInSet: return "ZeroInSet";
    case ErrorCode::BadEpsilon: return "BadEpsilon";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::BadResidueClass: return "BadResidueClass";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::TypeError: return "TypeError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace chisum
