#pragma once

// Test-only helpers: seeded generators and an integration oracle on S^3 that
// is independent of the closed-form moment formula.

#include <cmath>
#include <numbers>
#include <random>

#include "crgeom/ellipsoid.hpp"
#include "crgeom/ring.hpp"

namespace crgeom::testing {

inline Poly random_poly(std::mt19937_64& rng, int max_degree, int n_terms) {
  std::uniform_int_distribution<int> e(0, max_degree);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::vector<Term> terms;
  for (int i = 0; i < n_terms; ++i) {
    Exponents x{std::uint16_t(e(rng)), std::uint16_t(e(rng)), std::uint16_t(e(rng)),
                std::uint16_t(e(rng))};
    while (x.degree() > max_degree) {
      if (x.a1) --x.a1; else if (x.b1) --x.b1; else if (x.a2) --x.a2; else --x.b2;
    }
    terms.push_back({x, Complex(c(rng), c(rng))});
  }
  return Poly::from_terms(terms);
}

inline Poly random_real_poly(std::mt19937_64& rng, int max_degree, int n_terms) {
  Poly q = random_poly(rng, max_degree, n_terms);
  return q + q.conj();
}

/// Quadratic u = x^T S x - 1 in real coordinates (x1, y1, x2, y2) with S
/// symmetric positive definite: a convex, hence strictly pseudoconvex, quadric.
inline Poly random_convex_quadric(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  double A[4][4], S[4][4];
  for (auto& row : A)
    for (double& x : row) x = c(rng);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      S[i][j] = (i == j) ? 0.5 : 0.0;
      for (int k = 0; k < 4; ++k) S[i][j] += A[k][i] * A[k][j];
    }
  // x1 = (z1 + z1b)/2, y1 = (z1 - z1b)/(2i), likewise for z2.
  const Complex I(0.0, 1.0);
  const Poly x[4] = {
      (Poly::variable(Var::z1) + Poly::variable(Var::z1bar)) * Complex(0.5),
      (Poly::variable(Var::z1) - Poly::variable(Var::z1bar)) * (-0.5 * I),
      (Poly::variable(Var::z2) + Poly::variable(Var::z2bar)) * Complex(0.5),
      (Poly::variable(Var::z2) - Poly::variable(Var::z2bar)) * (-0.5 * I),
  };
  Poly u = Poly::constant(-1.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) u += x[i] * x[j] * Complex(S[i][j]);
  // Remove rounding asymmetry so the polynomial is exactly real-valued.
  return (u + u.conj()) * Complex(0.5);
}

/// Integral over S^3 by tensor quadrature in Hopf coordinates
/// z1 = cos(eta) e^{i a}, z2 = sin(eta) e^{i b}, d sigma = sin cos d eta da db.
/// Gauss-Legendre in eta, uniform rule in the angles (exact for trig
/// polynomials of degree < n_angle).
inline Complex quadrature_integral(const Poly& p, int n_eta = 48, int n_angle = 64) {
  // Gauss-Legendre nodes on [-1, 1] by Newton iteration.
  std::vector<double> x(static_cast<std::size_t>(n_eta)), w(static_cast<std::size_t>(n_eta));
  for (int i = 0; i < n_eta; ++i) {
    double r = std::cos(std::numbers::pi * (i + 0.75) / (n_eta + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = r;
      for (int k = 2; k <= n_eta; ++k) {
        const double p2 = ((2.0 * k - 1.0) * r * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n_eta * (r * p1 - p0) / (r * r - 1.0);
      const double dr = p1 / dp;
      r -= dr;
      if (std::abs(dr) < 1e-16) {
        w[std::size_t(i)] = 2.0 / ((1.0 - r * r) * dp * dp);
        break;
      }
      w[std::size_t(i)] = 2.0 / ((1.0 - r * r) * dp * dp);
    }
    x[std::size_t(i)] = r;
  }
  const double half = std::numbers::pi / 4.0;  // eta in [0, pi/2]
  const double dang = 2.0 * std::numbers::pi / n_angle;
  Complex s = 0.0;
  for (int i = 0; i < n_eta; ++i) {
    const double eta = half * (x[std::size_t(i)] + 1.0);
    const double we = half * w[std::size_t(i)] * std::sin(eta) * std::cos(eta);
    for (int a = 0; a < n_angle; ++a)
      for (int b = 0; b < n_angle; ++b) {
        const Complex z1 = std::polar(std::cos(eta), a * dang);
        const Complex z2 = std::polar(std::sin(eta), b * dang);
        s += we * dang * dang * p.eval(z1, z2);
      }
  }
  return s;
}

inline EllipsoidParams random_ellipsoid(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> lg(std::log(0.1), std::log(10.0));
  return {std::exp(lg(rng)), std::exp(lg(rng)), std::exp(lg(rng)), std::exp(lg(rng))};
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace crgeom::testing
