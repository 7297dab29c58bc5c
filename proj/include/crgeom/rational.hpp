#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace crgeom {

/// Reduced fraction with positive denominator. Only used for reporting exact
/// certificate values, so overflow is checked rather than avoided.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// The fraction with denominator <= max_den that equals x exactly as a
  /// double, if any.
  static std::optional<Rational> from_double(double x, std::int64_t max_den = 1000000);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return double(num_) / double(den_); }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace crgeom
