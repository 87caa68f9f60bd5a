#include "benlab/error.hpp"

namespace benlab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::BadBase: return "BadBase";
    case ErrorCode::BadDigit: return "BadDigit";
    case ErrorCode::ZeroPrefixProbability: return "ZeroPrefixProbability";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::PolicyExhausted: return "PolicyExhausted";
    case ErrorCode::UnsupportedForm: return "UnsupportedForm";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DepthUnsupported: return "DepthUnsupported";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NumericFailure: return "NumericFailure";
    case ErrorCode::BadInterval: return "BadInterval";
    case ErrorCode::Unreadable: return "Unreadable";
  }
  return "Unknown";
}

}  // namespace benlab
