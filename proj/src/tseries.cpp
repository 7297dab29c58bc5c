#include "crgeom/tseries.hpp"

#include <algorithm>

#include "crgeom/error.hpp"

namespace crgeom {

namespace {
void require_same_order(const TSeries& a, const TSeries& b) {
  if (a.order() != b.order())
    throw Error(ErrorCode::InvalidArgument, "t-series truncation orders differ");
}
}  // namespace

bool TSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const SphereField& f) { return f.is_zero(); });
}

TSeries TSeries::conj() const {
  return map([](const SphereField& f) { return f.conj(); });
}

TSeries TSeries::shifted(int k) const {
  TSeries r(order());
  for (int i = 0; i + k <= order(); ++i) r[i + k] = c_[std::size_t(i)];
  return r;
}

SphereField TSeries::evaluate(double t) const {
  SphereField s;
  double tk = 1.0;
  for (const auto& c : c_) {
    if (!c.is_zero()) s += c * Complex(tk);
    tk *= t;
  }
  return s;
}

TSeries& TSeries::operator+=(const TSeries& o) {
  require_same_order(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TSeries& TSeries::operator-=(const TSeries& o) {
  require_same_order(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TSeries& TSeries::operator*=(Complex s) {
  for (auto& c : c_) c *= s;
  return *this;
}

TSeries operator*(const TSeries& a, const TSeries& b) {
  require_same_order(a, b);
  const int K = a.order();
  TSeries r(K);
  for (int i = 0; i <= K; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= K; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

}  // namespace crgeom
