#pragma once

#include <stdexcept>
#include <string>

namespace iassr {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Geometry,
  DegenerateSpread,
  NotHermitian,
  InfeasibleAllocation,
  NoConvergence,
  AlignmentFailed,
  DegenerateDirectLink,
  ZfSingular,
  Config,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace iassr
