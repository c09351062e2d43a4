#pragma once

#include <stdexcept>
#include <string>

namespace epiflat {

enum class ErrorCode {
  OutOfRange,
  SelfLoop,
  ParseError,
  NoTriplets,
  InvalidParams,
  UnreachableTarget,
  NoConvergence,
  DegenerateSample,
  EmptyCurve,
  Degenerate,
  IoError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::SelfLoop: return "SELF_LOOP";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::NoTriplets: return "NO_TRIPLETS";
    case ErrorCode::InvalidParams: return "INVALID_PARAMS";
    case ErrorCode::UnreachableTarget: return "UNREACHABLE_TARGET";
    case ErrorCode::NoConvergence: return "NO_CONVERGENCE";
    case ErrorCode::DegenerateSample: return "DEGENERATE_SAMPLE";
    case ErrorCode::EmptyCurve: return "EMPTY_CURVE";
    case ErrorCode::Degenerate: return "DEGENERATE";
    case ErrorCode::IoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

/// Library-wide exception. Every error raised by epiflat carries a code from
/// the enum above so callers can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace epiflat
