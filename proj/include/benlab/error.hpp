#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace benlab {

enum class ErrorCode {
  ZeroInput,
  BadBase,
  BadDigit,
  ZeroPrefixProbability,
  InvalidParameter,
  SyntaxError,
  UnknownFamily,
  UnknownPreset,
  ArityMismatch,
  PolicyExhausted,
  UnsupportedForm,
  EmptyRange,
  TooLarge,
  DepthUnsupported,
  Overflow,
  EmptyInput,
  NonFinite,
  NumericFailure,
  BadInterval,
  Unreadable,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, const std::string& what, std::size_t pos)
      : Error(code, what), position_(pos) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace benlab
