#include "crgeom/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crgeom/error.hpp"
#include "crgeom/parallel.hpp"

namespace crgeom {

void EllipsoidParams::validate() const {
  for (double v : {A1, B1, A2, B2}) {
    if (!std::isfinite(v) || !(v > 0.0))
      throw Error(ErrorCode::InvalidArgument, "ellipsoid parameters A_j, B_j must be positive");
  }
}

Poly defining_poly(const EllipsoidParams& p) {
  p.validate();
  return Poly::from_terms({
      {{1, 1, 0, 0}, p.b1()},
      {{0, 0, 1, 1}, p.b2()},
      {{2, 0, 0, 0}, p.a1()},
      {{0, 2, 0, 0}, p.a1()},
      {{0, 0, 2, 0}, p.a2()},
      {{0, 0, 0, 2}, p.a2()},
      {{0, 0, 0, 0}, -1.0},
  });
}

double closed_form_R(const EllipsoidParams& p, PointC2 pt, double surface_tol) {
  p.validate();
  const double a1 = p.a1(), b1 = p.b1(), a2 = p.a2(), b2 = p.b2();
  const Complex z1 = pt.z1, z2 = pt.z2;
  const double u = (b1 * std::norm(z1) + b2 * std::norm(z2) + 2.0 * a1 * (z1 * z1).real() +
                    2.0 * a2 * (z2 * z2).real()) -
                   1.0;
  if (std::abs(u) > surface_tol)
    throw Error(ErrorCode::OffSurface, "point is not on the ellipsoid (|u| = " + std::to_string(std::abs(u)) + ")");

  const Complex u1 = b1 * std::conj(z1) + 2.0 * a1 * z1;
  const Complex u2 = b2 * std::conj(z2) + 2.0 * a2 * z2;
  const double h = b1 * std::norm(u2) + b2 * std::norm(u1) - b1 * b2 * u;
  const Complex z1h = 2.0 * a1 * b2 * u2 * std::conj(u1) - 2.0 * a2 * b1 * u1 * std::conj(u2);
  const auto [c1, c2] = certificates(p);
  return std::norm(z1h) / (h * h * h) +
         (2.0 * b1 * c2 * std::norm(u1) + 2.0 * b2 * c1 * std::norm(u2)) / (h * h);
}

std::array<double, 2> certificates(const EllipsoidParams& p) {
  return {p.b1() * p.b1() - 2.0 * p.a1() * p.a1(), p.b2() * p.b2() - 2.0 * p.a2() * p.a2()};
}

std::optional<std::array<Rational, 2>> exact_certificates(const EllipsoidParams& p) {
  std::array<std::optional<Rational>, 4> r{Rational::from_double(p.A1), Rational::from_double(p.B1),
                                           Rational::from_double(p.A2), Rational::from_double(p.B2)};
  if (!std::all_of(r.begin(), r.end(), [](const auto& x) { return x.has_value(); })) return std::nullopt;
  auto cert = [](const Rational& A, const Rational& B) {
    return (A * A + B * B + Rational(6) * A * B) * Rational(1, 8);
  };
  try {
    return std::array<Rational, 2>{cert(*r[0], *r[1]), cert(*r[2], *r[3])};
  } catch (const Error&) {
    return std::nullopt;
  }
}

PositivityReport positivity_report(const EllipsoidParams& p, int n, std::uint64_t seed,
                                   const SurfaceTolerances& tol) {
  p.validate();
  const Poly u = defining_poly(p);
  const SurfaceGeometry geom(u, tol);

  PositivityReport rep;
  rep.params = p;
  rep.certificates = certificates(p);
  rep.exact_certificates = exact_certificates(p);
  rep.min_R = std::numeric_limits<double>::infinity();
  rep.max_R = -std::numeric_limits<double>::infinity();
  rep.min_h = std::numeric_limits<double>::infinity();

  const auto pts = sample_surface(u, n, seed);
  rep.samples.resize(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const PointC2 pt = pts[i];
    const FrameData f = geom.frame_at(pt);
    const ConnectionData c = geom.connection_at(pt);
    EllipsoidSample& s = rep.samples[i];
    s.pt = pt;
    s.h = f.h;
    s.R_general = c.R;
    s.R_closed = closed_form_R(p, pt, std::max(1e-10, tol.surface));
    s.reldiff = std::abs(s.R_closed - s.R_general) / std::max(std::abs(s.R_closed), 1e-300);
    s.torsion_abs = std::abs(c.torsion);
    s.ma_defect = monge_ampere_defect(u, pt, tol);
  });
  for (const auto& s : rep.samples) {
    rep.min_R = std::min(rep.min_R, s.R_closed);
    rep.max_R = std::max(rep.max_R, s.R_closed);
    rep.min_h = std::min(rep.min_h, s.h);
    rep.max_reldiff = std::max(rep.max_reldiff, s.reldiff);
  }
  rep.positive = rep.min_R > 0.0;
  return rep;
}

}  // namespace crgeom
