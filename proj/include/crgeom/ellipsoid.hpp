#pragma once

// Ellipsoids A1 x1^2 + B1 y1^2 + A2 x2^2 + B2 y2^2 = 1 in C^2 and the closed
// form of their Webster curvature.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "crgeom/hypersurface.hpp"
#include "crgeom/rational.hpp"

namespace crgeom {

struct EllipsoidParams {
  double A1 = 1.0, B1 = 1.0, A2 = 1.0, B2 = 1.0;

  /// Throws InvalidArgument unless all four are finite and positive.
  void validate() const;
  double a1() const noexcept { return 0.25 * (A1 - B1); }
  double b1() const noexcept { return 0.5 * (A1 + B1); }
  double a2() const noexcept { return 0.25 * (A2 - B2); }
  double b2() const noexcept { return 0.5 * (A2 + B2); }
};

/// u = b1|z1|^2 + b2|z2|^2 + a1(z1^2 + z1bar^2) + a2(z2^2 + z2bar^2) - 1
Poly defining_poly(const EllipsoidParams& p);

/// Closed-form Webster curvature at a point of the ellipsoid. Throws
/// OffSurface if |u(pt)| > surface_tol.
double closed_form_R(const EllipsoidParams& p, PointC2 pt, double surface_tol = 1e-10);

/// b_j^2 - 2 a_j^2 for j = 1, 2; both positive for a valid ellipsoid.
std::array<double, 2> certificates(const EllipsoidParams& p);

/// (A_j^2 + B_j^2 + 6 A_j B_j) / 8 in exact arithmetic, when every parameter
/// is a fraction with a small denominator.
std::optional<std::array<Rational, 2>> exact_certificates(const EllipsoidParams& p);

struct EllipsoidSample {
  PointC2 pt;
  double h = 0.0;
  double R_closed = 0.0;
  double R_general = 0.0;
  double reldiff = 0.0;
  double torsion_abs = 0.0;
  double ma_defect = 0.0;
};

struct PositivityReport {
  EllipsoidParams params;
  std::vector<EllipsoidSample> samples;
  double min_R = 0.0;
  double max_R = 0.0;
  double min_h = 0.0;
  double max_reldiff = 0.0;
  std::array<double, 2> certificates{};
  std::optional<std::array<Rational, 2>> exact_certificates;
  bool positive = false;  ///< min_R > 0
};

PositivityReport positivity_report(const EllipsoidParams& p, int n, std::uint64_t seed,
                                   const SurfaceTolerances& tol = {});

}  // namespace crgeom
