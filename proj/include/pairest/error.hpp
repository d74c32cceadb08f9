#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pairest {

enum class ErrorCode {
  DuplicateMention,
  UnknownMention,
  UniverseMismatch,
  NoPredictedLinks,
  NoTrueLinks,
  InvalidDesign,
  InsufficientSample,
  DegenerateRatio,
  InvalidInput,
  SchemaError,
  ParseError,
  Overflow,
  Internal,
};

/// Stable name of an error code, e.g. "NoPredictedLinks".
std::string_view error_name(ErrorCode code) noexcept;

/// Single exception type for the library; the code carries the taxonomy.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pairest
