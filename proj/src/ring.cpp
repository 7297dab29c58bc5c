#include "crgeom/ring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

namespace crgeom {

namespace {

std::vector<Term> merge(const std::vector<Term>& x, const std::vector<Term>& y, double sign) {
  std::vector<Term> out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->exp.key() < j->exp.key())) {
      out.push_back(*i++);
    } else if (i == x.end() || j->exp.key() < i->exp.key()) {
      out.push_back({j->exp, sign * j->coef});
      ++j;
    } else {
      Complex c = i->coef + sign * j->coef;
      if (c != Complex(0.0)) out.push_back({i->exp, c});
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<Term> from_map(const std::unordered_map<std::uint64_t, Complex>& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (const auto& [k, c] : acc)
    if (c != Complex(0.0)) out.push_back({Exponents::from_key(k), c});
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return a.exp.key() < b.exp.key(); });
  return out;
}

// Integer powers with a small cache per evaluation.
struct PowerTable {
  std::vector<Complex> v;
  PowerTable(Complex x, int n) : v(std::size_t(n) + 1) {
    v[0] = 1.0;
    for (int i = 1; i <= n; ++i) v[i] = v[i - 1] * x;
  }
};

}  // namespace

Poly Poly::constant(Complex c) { return monomial({}, c); }

Poly Poly::monomial(Exponents e, Complex c) {
  if (c == Complex(0.0)) return Poly();
  return Poly(std::vector<Term>{{e, c}});
}

Poly Poly::variable(Var v) {
  Exponents e;
  switch (v) {
    case Var::z1: e.a1 = 1; break;
    case Var::z1bar: e.b1 = 1; break;
    case Var::z2: e.a2 = 1; break;
    case Var::z2bar: e.b2 = 1; break;
  }
  return monomial(e);
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::unordered_map<std::uint64_t, Complex> acc;
  for (const auto& t : terms) acc[t.exp.key()] += t.coef;
  return Poly(from_map(acc));
}

int Poly::degree() const noexcept {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exp.degree());
  return d;
}

Complex Poly::coefficient(Exponents e) const noexcept {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e.key(),
                             [](const Term& t, std::uint64_t k) { return t.exp.key() < k; });
  return (it != terms_.end() && it->exp == e) ? it->coef : Complex(0.0);
}

double Poly::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coef));
  return m;
}

Complex Poly::eval(Complex z1, Complex z2) const {
  int m1 = 0, n1 = 0, m2 = 0, n2 = 0;
  for (const auto& t : terms_) {
    m1 = std::max<int>(m1, t.exp.a1);
    n1 = std::max<int>(n1, t.exp.b1);
    m2 = std::max<int>(m2, t.exp.a2);
    n2 = std::max<int>(n2, t.exp.b2);
  }
  PowerTable p1(z1, m1), q1(std::conj(z1), n1), p2(z2, m2), q2(std::conj(z2), n2);
  Complex s = 0.0;
  for (const auto& t : terms_)
    s += t.coef * p1.v[t.exp.a1] * q1.v[t.exp.b1] * p2.v[t.exp.a2] * q2.v[t.exp.b2];
  return s;
}

Poly Poly::conj() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) out.push_back({t.exp.conj(), std::conj(t.coef)});
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return a.exp.key() < b.exp.key(); });
  return Poly(std::move(out));
}

bool Poly::is_real_valued(double tol) const {
  for (const auto& t : terms_) {
    if (std::abs(t.coef - std::conj(coefficient(t.exp.conj()))) > tol) return false;
  }
  return true;
}

Poly Poly::chop(double tol) const {
  std::vector<Term> out;
  for (const auto& t : terms_)
    if (std::abs(t.coef) > tol) out.push_back(t);
  return Poly(std::move(out));
}

Poly& Poly::operator+=(const Poly& o) {
  terms_ = merge(terms_, o.terms_, 1.0);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  terms_ = merge(terms_, o.terms_, -1.0);
  return *this;
}

Poly& Poly::operator*=(Complex s) {
  if (s == Complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= s;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  return r *= -1.0;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.size() == 1 && b.size() == 1) {
    return Poly::monomial(Exponents::from_key(a.terms_[0].exp.key() + b.terms_[0].exp.key()),
                          a.terms_[0].coef * b.terms_[0].coef);
  }
  std::unordered_map<std::uint64_t, Complex> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) acc[x.exp.key() + y.exp.key()] += x.coef * y.coef;
  return Poly(from_map(acc));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || a.terms_[i].coef != b.terms_[i].coef) return false;
  return true;
}

Poly wirtinger(const Poly& p, Var v) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Exponents e = t.exp;
    std::uint16_t* slot = nullptr;
    switch (v) {
      case Var::z1: slot = &e.a1; break;
      case Var::z1bar: slot = &e.b1; break;
      case Var::z2: slot = &e.a2; break;
      case Var::z2bar: slot = &e.b2; break;
    }
    if (*slot == 0) continue;
    double n = *slot;
    --*slot;
    out.push_back({e, n * t.coef});
  }
  // Distinct inputs map to distinct outputs, so no accumulation is needed,
  // but the key order may change.
  return Poly::from_terms(std::move(out));
}

double sphere_moment(Exponents e) noexcept {
  if (e.a1 != e.b1 || e.a2 != e.b2) return 0.0;
  // 2 pi^2 a1! a2! / (a1 + a2 + 1)!  =  2 pi^2 / ((a1 + a2 + 1) * C(a1 + a2, a1))
  const int n = e.a1 + e.a2;
  const int k = std::min<int>(e.a1, e.a2);
  double binom = 1.0;
  for (int i = 1; i <= k; ++i) binom = binom * (n - k + i) / i;
  return 2.0 * std::numbers::pi * std::numbers::pi / ((n + 1) * binom);
}

Complex sphere_integral(const Poly& p) noexcept {
  Complex s = 0.0;
  for (const auto& t : p.terms()) {
    if (t.exp.a1 == t.exp.b1 && t.exp.a2 == t.exp.b2) s += t.coef * sphere_moment(t.exp);
  }
  return s;
}

SphereField normal_form(const Poly& p) { return SphereField(p); }

SphereField::SphereField(const Poly& p) {
  bool reduced = true;
  for (const auto& t : p.terms()) reduced = reduced && t.exp.sphere_normal();
  if (reduced) {
    p_ = p;
    return;
  }
  std::vector<Term> out;
  out.reserve(p.size() * 2);
  for (const auto& t : p.terms()) {
    if (t.exp.sphere_normal()) {
      out.push_back(t);
      continue;
    }
    // z2^a conj(z2)^b = z2^(a-m) conj(z2)^(b-m) (1 - |z1|^2)^m,  m = min(a, b)
    const int m = std::min(t.exp.a2, t.exp.b2);
    Exponents base = t.exp;
    base.a2 -= m;
    base.b2 -= m;
    double binom = 1.0;
    for (int k = 0; k <= m; ++k) {
      Exponents e = base;
      e.a1 += k;
      e.b1 += k;
      out.push_back({e, (k % 2 ? -binom : binom) * t.coef});
      binom = binom * (m - k) / (k + 1);
    }
  }
  p_ = Poly::from_terms(std::move(out));
}

SphereField SphereField::conj() const { return SphereField(p_.conj(), Trusted{}); }

SphereField& SphereField::operator+=(const SphereField& o) {
  p_ += o.p_;
  return *this;
}

SphereField& SphereField::operator-=(const SphereField& o) {
  p_ -= o.p_;
  return *this;
}

SphereField& SphereField::operator*=(Complex s) {
  p_ *= s;
  return *this;
}

SphereField operator*(const SphereField& a, const SphereField& b) {
  return SphereField(a.p_ * b.p_);
}

Complex inner_product(const SphereField& f, const SphereField& g) {
  // Only terms of equal torus weight pair to a non-zero moment.
  std::map<std::pair<int, int>, std::vector<const Term*>> by_weight;
  for (const auto& t : g.poly().terms()) by_weight[t.exp.weight()].push_back(&t);
  Complex s = 0.0;
  for (const auto& x : f.poly().terms()) {
    auto it = by_weight.find(x.exp.weight());
    if (it == by_weight.end()) continue;
    for (const Term* y : it->second) {
      Exponents e = Exponents::from_key(x.exp.key() + y->exp.conj().key());
      s += x.coef * std::conj(y->coef) * sphere_moment(e);
    }
  }
  return s;
}

}  // namespace crgeom
