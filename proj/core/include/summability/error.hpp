#pragma once

#include <stdexcept>
#include <string>

namespace summability {

enum class ErrorCode {
  InvalidKernel,
  DegenerateKernel,
  FlavorMismatch,
  InvalidArgument,
  TransformFailed,
  QuadratureFailed,
  ConfigError,
  ParseError,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when adaptive refinement cannot meet tolerance; carries the offending subinterval.
class QuadratureError : public Error {
 public:
  QuadratureError(double lo, double hi, const std::string& what)
      : Error(ErrorCode::QuadratureFailed, what), lo_(lo), hi_(hi) {}

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

}  // namespace summability
