#include "summability/error.hpp"

namespace summability {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidKernel: return "InvalidKernel";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::FlavorMismatch: return "FlavorMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::TransformFailed: return "TransformFailed";
    case ErrorCode::QuadratureFailed: return "QuadratureFailed";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace summability
