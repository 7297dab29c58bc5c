#pragma once

#include <vector>

#include "crgeom/ring.hpp"

namespace crgeom {

/// Truncated power series in the deformation parameter t with SphereField
/// coefficients. Coefficient 0 is the t = 0 value; every product drops powers
/// above the truncation order. Order 0 doubles as the carrier for the exact-t
/// backend, where t has already been substituted numerically.
class TSeries {
 public:
  TSeries() : c_(1) {}
  explicit TSeries(int order) : c_(std::size_t(order) + 1) {}
  TSeries(SphereField f, int order) : c_(std::size_t(order) + 1) { c_[0] = std::move(f); }

  int order() const noexcept { return int(c_.size()) - 1; }
  const SphereField& operator[](int k) const { return c_[std::size_t(k)]; }
  SphereField& operator[](int k) { return c_[std::size_t(k)]; }
  const std::vector<SphereField>& coefficients() const noexcept { return c_; }

  bool is_zero() const;
  TSeries conj() const;
  /// Multiplies by t^k.
  TSeries shifted(int k) const;
  SphereField evaluate(double t) const;
  /// Applies f to every coefficient.
  template <class Fn>
  TSeries map(Fn&& f) const {
    TSeries r(order());
    for (int k = 0; k <= order(); ++k) r[k] = f(c_[std::size_t(k)]);
    return r;
  }

  TSeries& operator+=(const TSeries& o);
  TSeries& operator-=(const TSeries& o);
  TSeries& operator*=(Complex s);
  friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
  friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
  friend TSeries operator*(const TSeries& a, const TSeries& b);
  friend TSeries operator*(TSeries a, Complex s) { return a *= s; }
  friend TSeries operator*(Complex s, TSeries a) { return a *= s; }

 private:
  std::vector<SphereField> c_;
};

}  // namespace crgeom
