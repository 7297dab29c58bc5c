#include <cmath>
#include <random>

#include "doctest.h"
#include "crgeom/ellipsoid.hpp"
#include "crgeom/error.hpp"
#include "crgeom/hypersurface.hpp"
#include "support.hpp"

using namespace crgeom;
using crgeom::testing::random_convex_quadric;
using crgeom::testing::random_ellipsoid;

namespace {
const Complex I(0.0, 1.0);
Poly z1() { return Poly::variable(Var::z1); }
Poly z1b() { return Poly::variable(Var::z1bar); }
Poly z2() { return Poly::variable(Var::z2); }
Poly z2b() { return Poly::variable(Var::z2bar); }
Poly sphere() { return z1() * z1b() + z2() * z2b() - Poly::constant(1.0); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

// Z1 and Zbar1 applied at the polynomial level, independent of the library's
// rational-function machinery.
Poly Z1(const Poly& u, const Poly& f) {
  return wirtinger(u, Var::z2) * wirtinger(f, Var::z1) - wirtinger(u, Var::z1) * wirtinger(f, Var::z2);
}
Poly Z1b(const Poly& u, const Poly& f) {
  return wirtinger(u, Var::z2bar) * wirtinger(f, Var::z1bar) -
         wirtinger(u, Var::z1bar) * wirtinger(f, Var::z2bar);
}
}  // namespace

TEST_SUITE("hypersurface") {

TEST_CASE("jet examples") {
  const Jet j(sphere(), {1.0, 0.0});
  CHECK(j.value() == Complex(0.0));
  CHECK(j.d(Var::z1) == Complex(1.0));
  CHECK(j.d(Var::z2) == Complex(0.0));
  CHECK(j.d(Var::z1, Var::z1bar) == Complex(1.0));
  CHECK(j.d(Var::z2, Var::z2bar) == Complex(1.0));
  CHECK(j.d(Var::z1, Var::z2bar) == Complex(0.0));
  const Exponents fifth{5, 0, 0, 0};
  CHECK_THROWS_AS(j[fifth], Error);

  const Poly ell = defining_poly({2.0, 1.0, 1.0, 1.0});
  CHECK(std::abs(Jet(ell, {1.0 / std::sqrt(2.0), 0.0}).d(Var::z1) - std::sqrt(2.0)) < 1e-15);

  const Poly rez1 = (z1() + z1b()) * Complex(0.5);
  const Jet jr(rez1, {0.0, 0.0});
  CHECK(jr.d(Var::z1) == Complex(0.5));
  for (Var v : {Var::z1, Var::z1bar, Var::z2, Var::z2bar})
    for (Var w : {Var::z1, Var::z1bar, Var::z2, Var::z2bar}) CHECK(jr.d(v, w) == Complex(0.0));
}

TEST_CASE("frame examples") {
  const FrameData f = frame(Jet(sphere(), {1.0, 0.0}));
  CHECK(std::abs(f.J + 1.0) < 1e-15);
  CHECK(std::abs(f.h - 1.0) < 1e-15);
  CHECK(std::abs(f.Uinv[0][1] - 1.0) < 1e-15);  // U^{12} = z1
  CHECK(std::abs(f.Uinv[0][2]) < 1e-15);        // U^{13} = z2
  CHECK(std::abs(f.T1 - I) < 1e-15);
  CHECK(std::abs(f.T2) < 1e-15);
  CHECK_FALSE(f.negated);

  const Poly ell2 = defining_poly({2.0, 2.0, 2.0, 2.0});
  const auto pts = sample_surface(ell2, 5, 3);
  for (const auto& pt : pts) CHECK(std::abs(frame(Jet(ell2, pt)).h - 4.0) < 1e-12);

  CHECK(code_of([] { frame(Jet((z1() + z1b()) * Complex(0.5), {0.0, 0.0})); }) ==
        ErrorCode::NotStrictlyPseudoconvex);
  CHECK(code_of([] { frame(Jet(sphere(), {0.5, 0.0})); }) == ErrorCode::OffSurface);
  CHECK(code_of([] { frame(Jet(z1() * z1b(), {0.0, 0.0})); }) == ErrorCode::DegenerateGradient);
}

TEST_CASE("orientation follows the sign of the Levi scalar") {
  const PointC2 pt{0.6, 0.8};
  const FrameData f = frame(Jet(-sphere(), pt));
  CHECK(f.negated);
  CHECK(std::abs(f.h - 1.0) < 1e-14);
  CHECK(orient(-sphere(), pt) == sphere());
  CHECK(code_of([&] { SurfaceGeometry(-sphere()).frame_at(pt); }) ==
        ErrorCode::NotStrictlyPseudoconvex);
  CHECK(std::abs(webster_R(-sphere(), pt) - 2.0) < 1e-12);
}

TEST_CASE("duality identities on random convex quadrics") {
  std::mt19937_64 rng(31);
  for (int s = 0; s < 20; ++s) {
    const Poly u = random_convex_quadric(rng);
    const Poly h = fefferman_levi(u);
    for (const auto& pt : sample_surface(u, 10, 100 + s)) {
      const FrameData f = frame(Jet(u, pt));
      CHECK(f.h > 0.0);
      CHECK(std::abs(f.h - h.eval(pt.z1, pt.z2).real()) < 1e-10 * f.h);
      // U U^{-1} = 1
      double err = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          Complex s2 = 0.0;
          for (int k = 0; k < 3; ++k) s2 += f.U[a][k] * f.Uinv[k][b];
          err = std::max(err, std::abs(s2 - Complex(a == b ? 1.0 : 0.0)));
        }
      CHECK(err < 1e-10);
      // closed-form cofactors for U^{12}, U^{13}
      const Complex U12 = (f.U[2][2] * f.u1bar - f.U[2][1] * f.u2bar) / f.h;
      const Complex U13 = (f.U[1][1] * f.u2bar - f.U[1][2] * f.u1bar) / f.h;
      CHECK(std::abs(U12 - f.Uinv[0][1]) < 1e-10 * (1.0 + std::abs(U12)));
      CHECK(std::abs(U13 - f.Uinv[0][2]) < 1e-10 * (1.0 + std::abs(U13)));
      // theta^1(Z1) = 1, theta(Z1) = 0, theta(T) = 1, theta^1(T) = 0
      CHECK(std::abs(f.c1 * f.Z1_1 + f.c2 * f.Z1_2 - 1.0) < 1e-10);
      CHECK(std::abs(f.u1 * f.Z1_1 + f.u2 * f.Z1_2) < 1e-12);
      CHECK(std::abs(-I * (f.u1 * f.T1 + f.u2 * f.T2) - 1.0) < 1e-10);
      CHECK(std::abs(f.c1 * f.T1 + f.c2 * f.T2) < 1e-10);
      // dtheta(Z1, Zbar1) = i h : -i du restricted to M gives h = Levi form
      const Complex levi = f.Z1_1 * std::conj(f.Z1_1) * f.U[1][1] +
                           f.Z1_1 * std::conj(f.Z1_2) * f.U[1][2] +
                           f.Z1_2 * std::conj(f.Z1_1) * f.U[2][1] +
                           f.Z1_2 * std::conj(f.Z1_2) * f.U[2][2];
      CHECK(std::abs(levi - f.h) < 1e-10 * f.h);

      const ConnectionData c = SurfaceGeometry(u).connection_at(pt);
      CHECK(c.structure_residual < 1e-8);
      CHECK(c.route_reldiff < 1e-8);
      CHECK(c.connection_consistency < 1e-8 * (1.0 + std::abs(c.R)));
    }
  }
}

TEST_CASE("round sphere") {
  const SurfaceGeometry g(sphere());
  for (const auto& pt : sample_surface(sphere(), 50, 7)) {
    CHECK(std::abs(std::sqrt(std::norm(pt.z1) + std::norm(pt.z2)) - 1.0) < 1e-12);
    const ConnectionData c = g.connection_at(pt);
    CHECK(std::abs(c.R - 2.0) < 1e-10);
    CHECK(std::abs(c.torsion) < 1e-12);
    CHECK(std::abs(c.beta1) < 1e-12);
    CHECK(std::abs(monge_ampere_defect(sphere(), pt)) < 1e-10);
  }
  // A=B=2: -J = 4 on M; beta1 vanishes because the extension is constant.
  const Poly e2 = defining_poly({2.0, 2.0, 2.0, 2.0});
  for (const auto& pt : sample_surface(e2, 10, 8)) {
    CHECK(std::abs(monge_ampere_defect(e2, pt) - 3.0) < 1e-10);
    CHECK(std::abs(connection_torsion(e2, pt).beta1) < 1e-12);
  }
  const Poly s2 = sphere() * Complex(2.0);
  for (const auto& pt : sample_surface(s2, 10, 9))
    CHECK(std::abs(monge_ampere_defect(s2, pt) - 7.0) < 1e-10);
}

TEST_CASE("worked ellipsoid value") {
  const Poly u = defining_poly({2.0, 1.0, 1.0, 1.0});
  CHECK(std::abs(webster_R(u, {1.0 / std::sqrt(2.0), 0.0}) - 1.5) < 1e-12);
}

TEST_CASE("scaling law") {
  std::mt19937_64 rng(41);
  const Poly ell = defining_poly(random_ellipsoid(rng));
  for (const Poly& u : {sphere(), ell}) {
    for (const auto& pt : sample_surface(u, 5, 42)) {
      const double R = webster_R(u, pt);
      for (double c : {0.5, 2.0, 10.0})
        CHECK(std::abs(webster_R(u * Complex(c), pt) * c - R) <= 1e-8 * std::abs(R));
    }
  }
}

TEST_CASE("claim identities on ellipsoids") {
  std::mt19937_64 rng(51);
  for (int s = 0; s < 10; ++s) {
    const EllipsoidParams p = random_ellipsoid(rng);
    const double a1 = p.a1(), b1 = p.b1(), a2 = p.a2(), b2 = p.b2();
    const Poly u = defining_poly(p);
    const Poly u1 = wirtinger(u, Var::z1), u2 = wirtinger(u, Var::z2);
    const Poly zbz_u1 = Z1b(u, Z1(u, u1)), zbz_u2 = Z1b(u, Z1(u, u2));
    for (const auto& pt : sample_surface(u, 10, 200 + s)) {
      const FrameData f = frame(Jet(u, pt));
      auto T = [&](const Poly& g) {
        return f.T1 * wirtinger(g, Var::z1).eval(pt.z1, pt.z2) +
               std::conj(f.T1) * wirtinger(g, Var::z1bar).eval(pt.z1, pt.z2) +
               f.T2 * wirtinger(g, Var::z2).eval(pt.z1, pt.z2) +
               std::conj(f.T2) * wirtinger(g, Var::z2bar).eval(pt.z1, pt.z2);
      };
      const double h = f.h;
      const Complex ub1 = f.u1bar, ub2 = f.u2bar;
      const Complex lhs1 = 2.0 * I * (f.c1 * T(u2) - f.c2 * T(u1));
      const Complex rhs1 = 2.0 / (h * h) *
                           (b1 * b2 * b2 * std::norm(f.u1) + b2 * b1 * b1 * std::norm(f.u2) -
                            2.0 * a1 * b2 * b2 * ub1 * ub1 - 2.0 * a2 * b1 * b1 * ub2 * ub2);
      const Complex lhs2 = (f.c2 * zbz_u1.eval(pt.z1, pt.z2) - f.c1 * zbz_u2.eval(pt.z1, pt.z2)) / h;
      const Complex rhs2 = (2.0 * a1 * b2 * b2 * ub1 * ub1 + 2.0 * a2 * b1 * b1 * ub2 * ub2) / (h * h);
      const double scale = 1.0 + std::abs(rhs1);
      CHECK(std::abs(lhs1 - rhs1) < 1e-10 * scale);
      CHECK(std::abs(lhs2 - rhs2) < 1e-10 * scale);
      // Exoflevi: h = b1|u2|^2 + b2|u1|^2 on M.
      CHECK(std::abs(h - (b1 * std::norm(f.u2) + b2 * std::norm(f.u1))) < 1e-10 * h);
    }
  }
}

TEST_CASE("surface sampling") {
  const auto a = sample_surface(sphere(), 20, 5), b = sample_surface(sphere(), 20, 5);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].z1 == b[i].z1);
    CHECK(a[i].z2 == b[i].z2);
    CHECK(std::abs(sphere().eval(a[i].z1, a[i].z2)) <= 1e-12);
  }
  const PointC2 d{Complex(0.3, -0.4), Complex(0.0, 1.2)};
  const PointC2 r = ray_intersection(sphere(), d);
  const double n = std::sqrt(std::norm(d.z1) + std::norm(d.z2));
  CHECK(std::abs(r.z1 - d.z1 / n) < 1e-14);
  CHECK(std::abs(r.z2 - d.z2 / n) < 1e-14);

  const Poly e = z1() * z1b() * Complex(2.0) + z2() * z2b() * Complex(8.0) - Poly::constant(1.0);
  const PointC2 q = ray_intersection(e, {0.0, 1.0});
  CHECK(std::abs(q.z1) == 0.0);
  CHECK(std::abs(q.z2 - 1.0 / std::sqrt(8.0)) < 1e-15);

  CHECK(code_of([] { sample_surface(Poly::constant(1.0) - z1() * z1b(), 3, 1); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { ray_intersection(z1() * z1b() - Poly::constant(1.0), {0.0, 1.0}); }) ==
        ErrorCode::RayEscaped);
  CHECK(code_of([] { sample_surface(sphere(), 0, 1); }) == ErrorCode::InvalidArgument);
}

}  // TEST_SUITE
