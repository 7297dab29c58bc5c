#pragma once

// Polynomials in (z1, conj z1, z2, conj z2) with complex coefficients, the
// quotient by |z1|^2 + |z2|^2 = 1, and exact integration over the unit S^3.

#include <complex>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace crgeom {

using Complex = std::complex<double>;

enum class Var { z1, z1bar, z2, z2bar };

/// Powers of z1, conj z1, z2, conj z2 (in that order).
struct Exponents {
  std::uint16_t a1 = 0;
  std::uint16_t b1 = 0;
  std::uint16_t a2 = 0;
  std::uint16_t b2 = 0;

  /// Monomial multiplication is addition of packed keys.
  std::uint64_t key() const noexcept {
    return std::uint64_t(a1) | (std::uint64_t(b1) << 16) | (std::uint64_t(a2) << 32) |
           (std::uint64_t(b2) << 48);
  }
  static Exponents from_key(std::uint64_t k) noexcept {
    return {std::uint16_t(k & 0xffff), std::uint16_t((k >> 16) & 0xffff),
            std::uint16_t((k >> 32) & 0xffff), std::uint16_t((k >> 48) & 0xffff)};
  }

  int degree() const noexcept { return a1 + b1 + a2 + b2; }
  /// Holomorphic degree p = a1 + a2.
  int p() const noexcept { return a1 + a2; }
  /// Antiholomorphic degree q = b1 + b2.
  int q() const noexcept { return b1 + b2; }
  Exponents conj() const noexcept { return {b1, a1, b2, a2}; }
  /// Torus weight (a1 - b1, a2 - b2); monomials of different weight are
  /// orthogonal on S^3.
  std::pair<int, int> weight() const noexcept { return {a1 - b1, a2 - b2}; }
  bool sphere_normal() const noexcept { return a2 == 0 || b2 == 0; }

  friend bool operator==(const Exponents&, const Exponents&) = default;
  friend auto operator<=>(const Exponents& x, const Exponents& y) noexcept {
    return x.key() <=> y.key();
  }
};

struct Term {
  Exponents exp;
  Complex coef;
};

/// Sparse polynomial. Terms are kept sorted by packed exponent key with no
/// duplicates and no exact-zero coefficients.
class Poly {
 public:
  Poly() = default;

  static Poly constant(Complex c);
  static Poly monomial(Exponents e, Complex c = 1.0);
  static Poly variable(Var v);
  /// Sums coefficients of repeated exponent tuples.
  static Poly from_terms(std::vector<Term> terms);

  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const noexcept;
  Complex coefficient(Exponents e) const noexcept;
  double max_abs_coefficient() const noexcept;

  Complex eval(Complex z1, Complex z2) const;
  Poly conj() const;
  /// Coefficient of (a1,b1,a2,b2) equals the conjugate of that of (b1,a1,b2,a2).
  bool is_real_valued(double tol = 0.0) const;
  /// Drops terms with |coef| <= tol.
  Poly chop(double tol) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(Complex s);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, Complex s) { return a *= s; }
  friend Poly operator*(Complex s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  explicit Poly(std::vector<Term> sorted) : terms_(std::move(sorted)) {}
  std::vector<Term> terms_;
};

/// Formal partial derivative treating the four variables as independent.
Poly wirtinger(const Poly& p, Var v);

/// Integral over S^3 of z1^a1 conj(z1)^b1 z2^a2 conj(z2)^b2 against the
/// standard measure (total mass 2 pi^2).
double sphere_moment(Exponents e) noexcept;

/// Linear extension of sphere_moment.
Complex sphere_integral(const Poly& p) noexcept;

/// A polynomial in sphere normal form: no term carries both z2 and conj z2.
/// Represents a function on S^3.
class SphereField {
 public:
  SphereField() = default;
  /// Reduces p modulo z2 conj(z2) = 1 - z1 conj(z1).
  explicit SphereField(const Poly& p);
  static SphereField constant(Complex c) { return SphereField(Poly::constant(c)); }

  const Poly& poly() const noexcept { return p_; }
  bool is_zero() const noexcept { return p_.is_zero(); }
  SphereField conj() const;
  Complex eval(Complex z1, Complex z2) const { return p_.eval(z1, z2); }

  SphereField& operator+=(const SphereField& o);
  SphereField& operator-=(const SphereField& o);
  SphereField& operator*=(Complex s);
  friend SphereField operator+(SphereField a, const SphereField& b) { return a += b; }
  friend SphereField operator-(SphereField a, const SphereField& b) { return a -= b; }
  friend SphereField operator*(const SphereField& a, const SphereField& b);
  friend SphereField operator*(SphereField a, Complex s) { return a *= s; }
  friend SphereField operator*(Complex s, SphereField a) { return a *= s; }
  friend bool operator==(const SphereField& a, const SphereField& b) { return a.p_ == b.p_; }

 private:
  struct Trusted {};
  SphereField(Poly p, Trusted) : p_(std::move(p)) {}
  Poly p_;
};

SphereField normal_form(const Poly& p);

/// <f, g> = integral of f conj(g) over S^3.
Complex inner_product(const SphereField& f, const SphereField& g);

}  // namespace crgeom
