#include "pairest/error.hpp"

namespace pairest {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateMention: return "DuplicateMention";
    case ErrorCode::UnknownMention: return "UnknownMention";
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::NoPredictedLinks: return "NoPredictedLinks";
    case ErrorCode::NoTrueLinks: return "NoTrueLinks";
    case ErrorCode::InvalidDesign: return "InvalidDesign";
    case ErrorCode::InsufficientSample: return "InsufficientSample";
    case ErrorCode::DegenerateRatio: return "DegenerateRatio";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

}  // namespace pairest
