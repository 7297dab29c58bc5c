#include "crgeom/error.hpp"

namespace crgeom {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::NotStrictlyPseudoconvex: return "NotStrictlyPseudoconvex";
    case ErrorCode::DegenerateGradient: return "DegenerateGradient";
    case ErrorCode::RouteMismatch: return "RouteMismatch";
    case ErrorCode::OffSurface: return "OffSurface";
    case ErrorCode::RayEscaped: return "RayEscaped";
    case ErrorCode::DegenerateDeformation: return "DegenerateDeformation";
    case ErrorCode::SeriesOrderInsufficient: return "SeriesOrderInsufficient";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotStrictlyPseudoconvex:
    case ErrorCode::DegenerateGradient:
    case ErrorCode::RouteMismatch:
    case ErrorCode::RayEscaped:
    case ErrorCode::DegenerateDeformation:
    case ErrorCode::SeriesOrderInsufficient:
    case ErrorCode::NotHermitian:
      return true;
    default:
      return false;
  }
}

}  // namespace crgeom
