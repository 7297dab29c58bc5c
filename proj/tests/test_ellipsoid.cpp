#include <cmath>
#include <random>

#include "doctest.h"
#include "crgeom/ellipsoid.hpp"
#include "crgeom/error.hpp"
#include "support.hpp"

using namespace crgeom;

TEST_SUITE("ellipsoid") {

TEST_CASE("defining polynomial") {
  const Poly s = defining_poly({1, 1, 1, 1});
  const Poly z1 = Poly::variable(Var::z1), z2 = Poly::variable(Var::z2);
  CHECK(s == z1 * z1.conj() + z2 * z2.conj() - Poly::constant(1.0));
  const EllipsoidParams p{2, 1, 1, 1};
  CHECK(p.a1() == 0.25);
  CHECK(p.b1() == 1.5);
  CHECK(defining_poly(p).is_real_valued());
  // zero set is A1 x1^2 + B1 y1^2 + ... = 1
  const Poly u = defining_poly({2, 3, 5, 7});
  const double x1 = 0.1, y1 = -0.2, x2 = 0.3, y2 = 0.05;
  CHECK(std::abs(u.eval({x1, y1}, {x2, y2}).real() -
                 (2 * x1 * x1 + 3 * y1 * y1 + 5 * x2 * x2 + 7 * y2 * y2 - 1)) < 1e-15);
}

TEST_CASE("closed form examples") {
  CHECK(std::abs(closed_form_R({1, 1, 1, 1}, {1.0, 0.0}) - 2.0) < 1e-15);
  CHECK(std::abs(closed_form_R({2, 1, 1, 1}, {1.0 / std::sqrt(2.0), 0.0}) - 1.5) < 1e-14);
  CHECK(std::abs(closed_form_R({2, 2, 2, 2}, {1.0 / std::sqrt(2.0), 0.0}) - 2.0) < 1e-14);
  CHECK_THROWS_AS(closed_form_R({1, 1, 1, 1}, {0.5, 0.0}), Error);
}

TEST_CASE("certificates") {
  const auto c = certificates({2, 1, 1, 1});
  CHECK(c[0] == doctest::Approx(17.0 / 8.0).epsilon(1e-15));
  CHECK(c[1] == doctest::Approx(1.0).epsilon(1e-15));
  const auto ex = exact_certificates({2, 1, 1, 1});
  REQUIRE(ex.has_value());
  CHECK((*ex)[0] == Rational(17, 8));
  CHECK((*ex)[0].str() == "17/8");
  CHECK((*ex)[1].str() == "1");
  CHECK_FALSE(exact_certificates({std::sqrt(2.0), 1, 1, 1}).has_value());

  std::mt19937_64 rng(61);
  for (int i = 0; i < 100; ++i) {
    const auto p = crgeom::testing::random_ellipsoid(rng);
    const auto cc = certificates(p);
    CHECK(std::abs(cc[0] - (p.A1 * p.A1 + p.B1 * p.B1 + 6 * p.A1 * p.B1) / 8) <= 1e-14 * cc[0]);
    CHECK(std::abs(cc[1] - (p.A2 * p.A2 + p.B2 * p.B2 + 6 * p.A2 * p.B2) / 8) <= 1e-14 * cc[1]);
  }
}

TEST_CASE("parameter validation") {
  for (const EllipsoidParams p : {EllipsoidParams{0, 1, 1, 1}, EllipsoidParams{1, -1, 1, 1},
                                  EllipsoidParams{1, 1, NAN, 1}, EllipsoidParams{1, 1, 1, INFINITY}}) {
    try {
      defining_poly(p);
      FAIL("expected InvalidArgument");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
    }
  }
}

TEST_CASE("positivity report") {
  const auto s = positivity_report({1, 1, 1, 1}, 10, 1);
  CHECK(s.samples.size() == 10);
  CHECK(std::abs(s.min_R - 2.0) < 1e-10);
  CHECK(s.certificates[0] == 1.0);
  CHECK(s.positive);

  std::mt19937_64 rng(71);
  for (int i = 0; i < 10; ++i) {
    const auto rep = positivity_report(crgeom::testing::random_ellipsoid(rng), 40, 500 + i);
    CHECK(rep.positive);
    CHECK(rep.max_reldiff <= 1e-8);
    for (const auto& smp : rep.samples) {
      CHECK(smp.R_closed > 0.0);
      CHECK(smp.h > 0.0);
    }
  }
}

}  // TEST_SUITE
