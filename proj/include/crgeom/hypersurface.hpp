#pragma once

// Pseudohermitian geometry of a real hypersurface M = {u = 0} in C^2 with the
// induced CR structure and contact form theta = (i/2)(dbar u - d u)|_M.
//
// The frame is Z1 = u_2 d/dz1 - u_1 d/dz2 with Levi scalar h = -J(u), where
// J(u) is the bordered complex Hessian determinant. All derivatives of h and of
// the coframe coefficients c1, c2 are taken from the polynomial extension
// h = -J(u) off M.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "crgeom/ring.hpp"

namespace crgeom {

struct PointC2 {
  Complex z1;
  Complex z2;
};

struct SurfaceTolerances {
  double surface = 1e-12;   ///< |u(pt)| allowed for a point on M
  double levi = 1e-12;      ///< h must exceed this
  double gradient = 1e-12;  ///< |du| must exceed this
  double cross = 1e-8;      ///< relative agreement of the two curvature routes
};

/// Values of u and all its Wirtinger partials up to total order 4 at a point.
/// The index is the multi-exponent of the derivative (d/dz1, d/dz1bar, d/dz2,
/// d/dz2bar), so mixed partials are symmetric by construction.
class Jet {
 public:
  static constexpr int max_order = 4;

  Jet(const Poly& u, PointC2 pt);

  PointC2 point() const noexcept { return pt_; }
  /// Throws InvalidArgument above max_order.
  Complex operator[](Exponents derivative) const;
  Complex value() const { return (*this)[{}]; }
  Complex d(Var v) const;
  Complex d(Var v, Var w) const;
  Jet negated() const;

 private:
  Jet() = default;
  PointC2 pt_{};
  std::map<std::uint64_t, Complex> values_;
};

inline Jet jet(const Poly& u, PointC2 pt) { return Jet(u, pt); }

/// Pointwise frame package. Indices of U and its inverse are 0-based here:
/// Uinv[0][1] is U^{12} in the usual 1-based notation.
struct FrameData {
  Complex u1, u2, u1bar, u2bar;
  double J = 0.0;      ///< Fefferman determinant of the (possibly negated) u
  double h = 0.0;      ///< Levi scalar, = -J on M
  double h_inv = 0.0;
  std::array<std::array<Complex, 3>, 3> U{};
  std::array<std::array<Complex, 3>, 3> Uinv{};
  Complex c1, c2;      ///< theta^1 = c1 dz1 + c2 dz2
  Complex T1, T2;      ///< T = T1 d/dz1 + T2 d/dz2 + complex conjugate
  Complex Z1_1, Z1_2;  ///< Z1 = Z1_1 d/dz1 + Z1_2 d/dz2
  bool negated = false;  ///< u was replaced by -u to make h positive
};

/// Frame at the jet's point. Negates u when h < 0. Throws OffSurface,
/// DegenerateGradient or NotStrictlyPseudoconvex.
FrameData frame(const Jet& j, const SurfaceTolerances& tol = {});

/// Connection and torsion coefficients in the (theta^1, theta) coframe:
/// theta_1^1 = beta1 theta^1 + beta0 theta, tau^1 = torsion theta^1bar.
struct ConnectionData {
  Complex beta1;
  Complex beta0;
  Complex torsion;
  double R = 0.0;              ///< Webster curvature from the log h route
  Complex R_log_route;         ///< complex value before taking the real part
  Complex R_claim_route;       ///< the 2i(c1 T u2 - c2 T u1) route
  double route_reldiff = 0.0;
  /// |beta0 + i(R + h^{-1} Zbar1 Z1 log h)|
  double connection_consistency = 0.0;
  /// Largest mismatch of d theta^1 - theta^1 ^ theta_1^1 - theta ^ tau^1 on
  /// the frame pairs (Z1, Z1bar), (Z1, T), (Z1bar, T), computed from brackets.
  double structure_residual = 0.0;
};

/// Symbolic pseudohermitian data of one defining function, evaluated at many
/// points. The defining function is used as given; see orient().
class SurfaceGeometry {
 public:
  explicit SurfaceGeometry(Poly u, SurfaceTolerances tol = {});
  ~SurfaceGeometry();
  SurfaceGeometry(SurfaceGeometry&&) noexcept;
  SurfaceGeometry& operator=(SurfaceGeometry&&) noexcept;

  const Poly& defining() const noexcept;
  /// -J(u) as a polynomial on C^2.
  const Poly& levi_extension() const noexcept;
  const SurfaceTolerances& tolerances() const noexcept;

  FrameData frame_at(PointC2 pt) const;
  /// Throws RouteMismatch when the two curvature formulas disagree.
  ConnectionData connection_at(PointC2 pt) const;
  double webster_R(PointC2 pt) const { return connection_at(pt).R; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// u or -u, whichever has positive Levi scalar at pt.
Poly orient(const Poly& u, PointC2 pt, const SurfaceTolerances& tol = {});

/// -J(u) as a polynomial.
Poly fefferman_levi(const Poly& u);

/// Connection data (curvature included) at one point, orienting u there.
ConnectionData connection_torsion(const Poly& u, PointC2 pt, const SurfaceTolerances& tol = {});
double webster_R(const Poly& u, PointC2 pt, const SurfaceTolerances& tol = {});

/// -J(u) - 1 at pt, for u as given.
double monge_ampere_defect(const Poly& u, PointC2 pt, const SurfaceTolerances& tol = {});

/// The point where the ray from the origin along `direction` (normalized
/// here) first crosses {u = 0}. Throws RayEscaped past max_radius.
PointC2 ray_intersection(const Poly& u, PointC2 direction, double max_radius = 1e6);

/// n points of {u = 0} found by bisection along seeded random rays from the
/// origin. Requires u real-valued with u(0) < 0.
std::vector<PointC2> sample_surface(const Poly& u, int n, std::uint64_t seed,
                                    double max_radius = 1e6);

}  // namespace crgeom
