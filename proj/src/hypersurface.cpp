#include "crgeom/hypersurface.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "crgeom/error.hpp"

namespace crgeom {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr std::array<Var, 4> kVars{Var::z1, Var::z1bar, Var::z2, Var::z2bar};

Exponents bump(Exponents e, Var v) {
  switch (v) {
    case Var::z1: ++e.a1; break;
    case Var::z1bar: ++e.b1; break;
    case Var::z2: ++e.a2; break;
    case Var::z2bar: ++e.b2; break;
  }
  return e;
}

// Determinant of the bordered complex Hessian
//   | u    u_1b   u_2b  |
//   | u_1  u_11b  u_12b |
//   | u_2  u_21b  u_22b |
template <class T>
T bordered_det(const std::array<std::array<T, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

std::array<std::array<Poly, 3>, 3> bordered_matrix(const Poly& u) {
  const Poly u1 = wirtinger(u, Var::z1), u2 = wirtinger(u, Var::z2);
  const Poly u1b = wirtinger(u, Var::z1bar), u2b = wirtinger(u, Var::z2bar);
  return {{{u, u1b, u2b},
           {u1, wirtinger(u1, Var::z1bar), wirtinger(u1, Var::z2bar)},
           {u2, wirtinger(u2, Var::z1bar), wirtinger(u2, Var::z2bar)}}};
}

// Rational function num / h^pow with the common denominator h = -J(u).
struct HFrac {
  Poly num;
  int pow = 0;
};

// Arithmetic on HFrac shares h, its powers and its first derivatives.
class HAlgebra {
 public:
  explicit HAlgebra(Poly h) {
    pows_.push_back(Poly::constant(1.0));
    pows_.push_back(h);
    for (std::size_t k = 0; k < 4; ++k) dh_[k] = wirtinger(h, kVars[k]);
  }

  const Poly& h() const { return pows_[1]; }

  const Poly& hpow(int n) {
    while (int(pows_.size()) <= n) pows_.push_back(pows_.back() * pows_[1]);
    return pows_[std::size_t(n)];
  }

  HFrac add(const HFrac& a, const HFrac& b, Complex sb = 1.0) {
    if (a.num.is_zero()) return {b.num * sb, b.pow};
    if (b.num.is_zero()) return a;
    const int m = std::max(a.pow, b.pow);
    Poly na = a.pow == m ? a.num : a.num * hpow(m - a.pow);
    Poly nb = b.pow == m ? b.num : b.num * hpow(m - b.pow);
    return {na + nb * sb, m};
  }
  HFrac sub(const HFrac& a, const HFrac& b) { return add(a, b, -1.0); }

  static HFrac mul(const HFrac& a, const HFrac& b) { return {a.num * b.num, a.pow + b.pow}; }
  static HFrac scale(const HFrac& a, Complex s) { return {a.num * s, a.pow}; }

  HFrac diff(const HFrac& a, std::size_t var) {
    Poly dn = wirtinger(a.num, kVars[var]);
    if (a.pow == 0) return {dn, 0};
    return {dn * h() - a.num * dh_[var] * Complex(a.pow), a.pow + 1};
  }

  using Field = std::array<HFrac, 4>;  // coefficients on d1, d1bar, d2, d2bar

  HFrac apply(const Field& X, const HFrac& f) {
    HFrac s;
    for (std::size_t k = 0; k < 4; ++k) {
      if (X[k].num.is_zero()) continue;
      s = add(s, mul(X[k], diff(f, k)));
    }
    return s;
  }

  Field bracket(const Field& X, const Field& Y) {
    Field r;
    for (std::size_t k = 0; k < 4; ++k) r[k] = sub(apply(X, Y[k]), apply(Y, X[k]));
    return r;
  }

  Complex eval(const HFrac& a, PointC2 pt) const {
    Complex v = a.num.eval(pt.z1, pt.z2);
    if (a.pow == 0) return v;
    return v / std::pow(pows_[1].eval(pt.z1, pt.z2), a.pow);
  }

 private:
  std::vector<Poly> pows_;
  std::array<Poly, 4> dh_;
};

HFrac frac(Poly p, int pow = 0) { return {std::move(p), pow}; }

}  // namespace

// ---------------------------------------------------------------------------
// Jet

Jet::Jet(const Poly& u, PointC2 pt) : pt_(pt) {
  std::map<std::uint64_t, Poly> layer{{Exponents{}.key(), u}};
  values_[Exponents{}.key()] = u.eval(pt.z1, pt.z2);
  for (int order = 1; order <= max_order; ++order) {
    std::map<std::uint64_t, Poly> next;
    for (const auto& [k, p] : layer) {
      for (Var v : kVars) {
        const auto e = bump(Exponents::from_key(k), v).key();
        if (next.count(e)) continue;
        Poly d = wirtinger(p, v);
        values_[e] = d.eval(pt.z1, pt.z2);
        next.emplace(e, std::move(d));
      }
    }
    layer = std::move(next);
  }
}

Complex Jet::operator[](Exponents derivative) const {
  if (derivative.degree() > max_order)
    throw Error(ErrorCode::InvalidArgument, "jet holds derivatives up to order 4 only");
  return values_.at(derivative.key());
}

Complex Jet::d(Var v) const { return (*this)[bump({}, v)]; }
Complex Jet::d(Var v, Var w) const { return (*this)[bump(bump({}, v), w)]; }

Jet Jet::negated() const {
  Jet r;
  r.pt_ = pt_;
  for (const auto& [k, v] : values_) r.values_[k] = -v;
  return r;
}

// ---------------------------------------------------------------------------
// Frame

FrameData frame(const Jet& jet_in, const SurfaceTolerances& tol) {
  if (std::abs(jet_in.value()) > tol.surface)
    throw Error(ErrorCode::OffSurface, "|u(pt)| = " + std::to_string(std::abs(jet_in.value())));

  auto assemble = [](const Jet& j) {
    std::array<std::array<Complex, 3>, 3> U{{
        {j.value(), j.d(Var::z1bar), j.d(Var::z2bar)},
        {j.d(Var::z1), j.d(Var::z1, Var::z1bar), j.d(Var::z1, Var::z2bar)},
        {j.d(Var::z2), j.d(Var::z2, Var::z1bar), j.d(Var::z2, Var::z2bar)},
    }};
    return U;
  };

  FrameData f;
  Jet j = jet_in;
  auto U = assemble(j);
  const double grad = std::sqrt(std::norm(U[1][0]) + std::norm(U[2][0]));
  if (grad <= tol.gradient) throw Error(ErrorCode::DegenerateGradient, "du vanishes at the point");

  double J = bordered_det(U).real();
  if (-J < -tol.levi) {
    j = j.negated();
    U = assemble(j);
    J = bordered_det(U).real();
    f.negated = true;
  }
  if (-J <= tol.levi)
    throw Error(ErrorCode::NotStrictlyPseudoconvex,
                "Levi scalar -J(u) = " + std::to_string(-J) + " is not positive");

  f.u1 = U[1][0];
  f.u2 = U[2][0];
  f.u1bar = U[0][1];
  f.u2bar = U[0][2];
  f.J = J;
  f.h = -J;
  f.h_inv = 1.0 / f.h;
  f.U = U;

  Eigen::Matrix3cd m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m(a, b) = U[std::size_t(a)][std::size_t(b)];
  const Eigen::Matrix3cd inv = m.inverse();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) f.Uinv[std::size_t(a)][std::size_t(b)] = inv(a, b);

  f.c1 = f.Uinv[0][2];
  f.c2 = -f.Uinv[0][1];
  f.T1 = I * f.Uinv[0][1];
  f.T2 = I * f.Uinv[0][2];
  f.Z1_1 = f.u2;
  f.Z1_2 = -f.u1;
  return f;
}

// ---------------------------------------------------------------------------
// SurfaceGeometry

struct SurfaceGeometry::Impl {
  Poly u;
  Poly h;
  SurfaceTolerances tol;
  HAlgebra alg;

  // Everything below is symbolic on C^2 and evaluated on demand.
  HFrac R_log, R_claim, beta1, beta0, torsion, zbz_log_h;
  HFrac bracket_z1_z1bar, bracket_z1_T, bracket_z1bar_T;

  Impl(Poly u_in, SurfaceTolerances t)
      : u(std::move(u_in)), h(fefferman_levi(u)), tol(t), alg(h) {
    const auto U = bordered_matrix(u);
    const Poly& u1 = U[1][0];
    const Poly& u2 = U[2][0];
    const Poly& u1b = U[0][1];
    const Poly& u2b = U[0][2];
    // h U^{12} and h U^{13}; these cofactors do not involve u itself.
    const Poly n12 = U[2][2] * u1b - U[2][1] * u2b;
    const Poly n13 = U[1][1] * u2b - U[1][2] * u1b;

    const HFrac c1 = frac(n13, 1);
    const HFrac c2 = frac(-n12, 1);
    const HAlgebra::Field Z1{frac(u2), HFrac{}, frac(-u1), HFrac{}};
    const HAlgebra::Field Z1b{HFrac{}, frac(u2b), HFrac{}, frac(-u1b)};
    const HAlgebra::Field T{frac(n12 * I, 1), frac(n12.conj() * -I, 1), frac(n13 * I, 1),
                            frac(n13.conj() * -I, 1)};

    const HFrac hf = frac(h);
    const HFrac z1h = alg.apply(Z1, hf);
    // Zbar1 Z1 log h
    zbz_log_h = alg.apply(Z1b, frac(z1h.num, z1h.pow + 1));
    const HFrac log_term = HAlgebra::scale(frac(zbz_log_h.num, zbz_log_h.pow + 1), -1.0);

    beta1 = frac(z1h.num, z1h.pow + 1);
    beta0 = alg.add(alg.sub(HAlgebra::mul(frac(u1), alg.apply(T, c2)),
                            HAlgebra::mul(frac(u2), alg.apply(T, c1))),
                    alg.sub(HAlgebra::mul(c1, alg.apply(Z1, c2)),
                            HAlgebra::mul(c2, alg.apply(Z1, c1))),
                    I);
    torsion = HAlgebra::scale(alg.sub(HAlgebra::mul(c1, alg.apply(Z1b, c2)),
                                      HAlgebra::mul(c2, alg.apply(Z1b, c1))),
                              -I);
    R_log = alg.add(log_term, beta0, I);

    const HFrac claim = HAlgebra::scale(alg.sub(HAlgebra::mul(c1, alg.apply(T, frac(u2))),
                                                HAlgebra::mul(c2, alg.apply(T, frac(u1)))),
                                        2.0 * I);
    const HFrac zbz_u1 = alg.apply(Z1b, alg.apply(Z1, frac(u1)));
    const HFrac zbz_u2 = alg.apply(Z1b, alg.apply(Z1, frac(u2)));
    HFrac last = alg.sub(HAlgebra::mul(c2, zbz_u1), HAlgebra::mul(c1, zbz_u2));
    last.pow += 1;
    R_claim = alg.add(alg.add(log_term, claim), last);

    auto theta1 = [&](const HAlgebra::Field& X) {
      return alg.add(HAlgebra::mul(c1, X[0]), HAlgebra::mul(c2, X[2]));
    };
    bracket_z1_z1bar = theta1(alg.bracket(Z1, Z1b));
    bracket_z1_T = theta1(alg.bracket(Z1, T));
    bracket_z1bar_T = theta1(alg.bracket(Z1b, T));
  }
};

SurfaceGeometry::SurfaceGeometry(Poly u, SurfaceTolerances tol)
    : impl_(std::make_unique<Impl>(std::move(u), tol)) {}
SurfaceGeometry::~SurfaceGeometry() = default;
SurfaceGeometry::SurfaceGeometry(SurfaceGeometry&&) noexcept = default;
SurfaceGeometry& SurfaceGeometry::operator=(SurfaceGeometry&&) noexcept = default;

const Poly& SurfaceGeometry::defining() const noexcept { return impl_->u; }
const Poly& SurfaceGeometry::levi_extension() const noexcept { return impl_->h; }
const SurfaceTolerances& SurfaceGeometry::tolerances() const noexcept { return impl_->tol; }

FrameData SurfaceGeometry::frame_at(PointC2 pt) const {
  FrameData f = frame(Jet(impl_->u, pt), impl_->tol);
  if (f.negated)
    throw Error(ErrorCode::NotStrictlyPseudoconvex,
                "Levi scalar is negative at this point for the fixed orientation of u");
  return f;
}

ConnectionData SurfaceGeometry::connection_at(PointC2 pt) const {
  const FrameData f = frame_at(pt);
  auto& alg = impl_->alg;
  ConnectionData c;
  c.beta1 = alg.eval(impl_->beta1, pt);
  c.beta0 = alg.eval(impl_->beta0, pt);
  c.torsion = alg.eval(impl_->torsion, pt);
  c.R_log_route = alg.eval(impl_->R_log, pt);
  c.R_claim_route = alg.eval(impl_->R_claim, pt);
  c.R = c.R_log_route.real();

  const double scale = std::max({std::abs(c.R_log_route), std::abs(c.R_claim_route), 1e-300});
  c.route_reldiff = std::abs(c.R_log_route - c.R_claim_route) / scale;
  if (c.route_reldiff > impl_->tol.cross || std::abs(c.R_log_route.imag()) > impl_->tol.cross * scale)
    throw Error(ErrorCode::RouteMismatch,
                "curvature routes disagree (relative difference " +
                    std::to_string(c.route_reldiff) + ")");

  const Complex zbz = alg.eval(impl_->zbz_log_h, pt);
  c.connection_consistency = std::abs(c.beta0 + I * (c.R_log_route + f.h_inv * zbz));
  c.structure_residual = std::max({std::abs(alg.eval(impl_->bracket_z1_z1bar, pt)),
                                   std::abs(-alg.eval(impl_->bracket_z1_T, pt) - c.beta0),
                                   std::abs(alg.eval(impl_->bracket_z1bar_T, pt) - c.torsion)});
  return c;
}

// ---------------------------------------------------------------------------
// Free functions

Poly fefferman_levi(const Poly& u) { return -bordered_det(bordered_matrix(u)); }

Poly orient(const Poly& u, PointC2 pt, const SurfaceTolerances& tol) {
  return frame(Jet(u, pt), tol).negated ? -u : u;
}

ConnectionData connection_torsion(const Poly& u, PointC2 pt, const SurfaceTolerances& tol) {
  return SurfaceGeometry(orient(u, pt, tol), tol).connection_at(pt);
}

double webster_R(const Poly& u, PointC2 pt, const SurfaceTolerances& tol) {
  return connection_torsion(u, pt, tol).R;
}

double monge_ampere_defect(const Poly& u, PointC2 pt, const SurfaceTolerances& tol) {
  const Complex val = u.eval(pt.z1, pt.z2);
  if (std::abs(val) > tol.surface)
    throw Error(ErrorCode::OffSurface, "|u(pt)| = " + std::to_string(std::abs(val)));
  return fefferman_levi(u).eval(pt.z1, pt.z2).real() - 1.0;
}

PointC2 ray_intersection(const Poly& u, PointC2 direction, double max_radius) {
  const double norm = std::sqrt(std::norm(direction.z1) + std::norm(direction.z2));
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw Error(ErrorCode::InvalidArgument, "ray direction must be non-zero");
  const Complex d1 = direction.z1 / norm, d2 = direction.z2 / norm;
  auto f = [&](double r) { return u.eval(r * d1, r * d2).real(); };
  if (!(f(0.0) < 0.0)) throw Error(ErrorCode::InvalidArgument, "ray search requires u(0) < 0");

  double lo = 0.0, hi = 1.0;
  while (f(hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > max_radius)
      throw Error(ErrorCode::RayEscaped, "no sign change within radius " + std::to_string(max_radius));
  }
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) <= 0.0 ? lo : hi) = mid;
  }
  const double r = std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
  return {r * d1, r * d2};
}

std::vector<PointC2> sample_surface(const Poly& u, int n, std::uint64_t seed, double max_radius) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
  if (!u.is_real_valued(1e-12 * std::max(1.0, u.max_abs_coefficient())))
    throw Error(ErrorCode::InvalidArgument, "defining function must be real-valued");
  if (!(u.eval(0.0, 0.0).real() < 0.0))
    throw Error(ErrorCode::InvalidArgument, "sampling requires u(0) < 0");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<PointC2> pts;
  pts.reserve(std::size_t(n));
  for (int i = 0; i < n; ++i) {
    double g[4];
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& x : g) {
        x = gauss(rng);
        norm += x * x;
      }
    } while (norm < 1e-24);
    norm = std::sqrt(norm);
    pts.push_back(ray_intersection(u, {Complex(g[0], g[1]), Complex(g[2], g[3])}, max_radius));
  }
  return pts;
}

}  // namespace crgeom
