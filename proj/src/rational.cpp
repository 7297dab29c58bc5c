#include "crgeom/rational.hpp"

#include <cmath>
#include <numeric>

#include "crgeom/error.hpp"

namespace crgeom {

namespace {
std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < -INT64_MAX) throw Error(ErrorCode::InvalidArgument, "rational overflow");
  return std::int64_t(v);
}
}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / (g ? g : 1);
  den_ = den / (g ? g : 1);
}

std::optional<Rational> Rational::from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x) || std::abs(x) > 1e12) return std::nullopt;
  // Continued-fraction convergents.
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int i = 0; i < 64; ++i) {
    const double a = std::floor(r);
    const auto ai = std::int64_t(a);
    const std::int64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (double(p1) / double(q1) == x) return Rational(p1, q1);
    const double frac = r - a;
    if (frac == 0.0) break;
    r = 1.0 / frac;
  }
  return std::nullopt;
}

std::string Rational::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(checked(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_),
                  checked(__int128(a.den_) * b.den_));
}

Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(checked(__int128(a.num_) * b.num_), checked(__int128(a.den_) * b.den_));
}

}  // namespace crgeom
