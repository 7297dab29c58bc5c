#pragma once

#include <stdexcept>
#include <string>

namespace crgeom {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  NotStrictlyPseudoconvex,
  DegenerateGradient,
  RouteMismatch,
  OffSurface,
  RayEscaped,
  DegenerateDeformation,
  SeriesOrderInsufficient,
  NotHermitian,
  DegreeCapExceeded,
};

const char* to_string(ErrorCode code) noexcept;

/// Exception carried by every failing operation of the core library. The code
/// is what the C API and the CLI map to status values and exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// True for failures of the numerics (as opposed to bad input).
bool is_numerical(ErrorCode code) noexcept;

}  // namespace crgeom
