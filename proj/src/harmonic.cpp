#include "crgeom/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "crgeom/error.hpp"

namespace crgeom {

namespace {

std::int64_t weight_key(Exponents e) {
  const auto [w1, w2] = e.weight();
  return (std::int64_t(w1) << 32) ^ std::int64_t(std::uint32_t(w2));
}

// Normal forms of all (p+1)(q+1) monomials of bidegree (p, q); a basis of the
// restriction of P_{p,q} to S^3.
std::vector<SphereField> bigraded_span(int p, int q) {
  std::vector<SphereField> out;
  for (int a1 = 0; a1 <= p; ++a1)
    for (int b1 = 0; b1 <= q; ++b1)
      out.push_back(normal_form(Poly::monomial(
          {std::uint16_t(a1), std::uint16_t(b1), std::uint16_t(p - a1), std::uint16_t(q - b1)})));
  return out;
}

// Orthogonal projection onto span(v). The span is block diagonal by torus
// weight, so only elements sharing a weight with f matter.
SphereField project(const SphereField& f, const std::vector<SphereField>& v) {
  std::vector<std::size_t> keep;
  std::vector<std::int64_t> wf;
  for (const auto& t : f.poly().terms()) wf.push_back(weight_key(t.exp));
  std::sort(wf.begin(), wf.end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    const auto w = weight_key(v[i].poly().terms()[0].exp);
    if (std::binary_search(wf.begin(), wf.end(), w)) keep.push_back(i);
  }
  if (keep.empty()) return {};
  const Eigen::Index n = Eigen::Index(keep.size());
  Eigen::MatrixXcd G(n, n);
  Eigen::VectorXcd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    rhs(i) = inner_product(f, v[keep[std::size_t(i)]]);
    for (Eigen::Index j = 0; j < n; ++j)
      G(i, j) = inner_product(v[keep[std::size_t(j)]], v[keep[std::size_t(i)]]);
  }
  const Eigen::VectorXcd c = G.ldlt().solve(rhs);
  SphereField out;
  for (Eigen::Index i = 0; i < n; ++i) out += v[keep[std::size_t(i)]] * c(i);
  return out;
}

}  // namespace

SphereBasis::SphereBasis(int N) : N_(N) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "basis degree must be at least 1");
  if (N > kMaxDegree)
    throw Error(ErrorCode::DegreeCapExceeded,
                "basis degree " + std::to_string(N) + " exceeds " + std::to_string(kMaxDegree));
  for (int d = 0; d <= N; ++d)
    for (int p = d; p >= 0; --p) {
      const int q = d - p;
      std::vector<Exponents> block;
      for (int a1 = 0; a1 <= p; ++a1)
        for (int b1 = 0; b1 <= q; ++b1) {
          const Exponents e{std::uint16_t(a1), std::uint16_t(b1), std::uint16_t(p - a1),
                            std::uint16_t(q - b1)};
          if (e.sphere_normal()) block.push_back(e);
        }
      std::sort(block.begin(), block.end());
      mono_.insert(mono_.end(), block.begin(), block.end());
    }
  for (std::size_t i = 0; i < mono_.size(); ++i) {
    index_[mono_[i].key()] = int(i);
    by_weight_[weight_key(mono_[i])].push_back(int(i));
  }
  const Eigen::Index n = Eigen::Index(mono_.size());
  gram_ = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& [w, idx] : by_weight_)
    for (int i : idx)
      for (int j : idx)
        gram_(i, j) = sphere_moment(Exponents::from_key(mono_[std::size_t(j)].key() +
                                                        mono_[std::size_t(i)].conj().key()));
}

int SphereBasis::index_of(Exponents e) const {
  auto it = index_.find(e.key());
  return it == index_.end() ? -1 : it->second;
}

Eigen::VectorXcd SphereBasis::moments(const SphereField& f) const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(size());
  for (const auto& t : f.poly().terms()) {
    auto it = by_weight_.find(weight_key(t.exp));
    if (it == by_weight_.end()) continue;
    for (int i : it->second)
      v(i) += t.coef * sphere_moment(Exponents::from_key(t.exp.key() + mono_[std::size_t(i)].conj().key()));
  }
  return v;
}

Eigen::VectorXcd SphereBasis::coordinates(const SphereField& f) const {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(size());
  for (const auto& t : f.poly().terms()) {
    const int i = index_of(t.exp);
    if (i < 0)
      throw Error(ErrorCode::DegreeCapExceeded,
                  "function has degree " + std::to_string(t.exp.degree()) + " above the basis cap " +
                      std::to_string(N_));
    c(i) = t.coef;
  }
  return c;
}

SphereField SphereBasis::combine(const Eigen::VectorXcd& c) const {
  std::vector<Term> terms;
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (c(i) != Complex(0.0)) terms.push_back({mono_[std::size_t(i)], c(i)});
  return SphereField(Poly::from_terms(std::move(terms)));
}

SphereField harmonic_project(const SphereField& f, int p, int q) {
  if (p < 0 || q < 0) throw Error(ErrorCode::InvalidArgument, "bidegree must be non-negative");
  if (p + q > kMaxDegree)
    throw Error(ErrorCode::DegreeCapExceeded, "bidegree above " + std::to_string(kMaxDegree));
  SphereField out = project(f, bigraded_span(p, q));
  if (p > 0 && q > 0) out -= project(f, bigraded_span(p - 1, q - 1));
  return out;
}

double l2_norm(const SphereField& f) { return std::sqrt(std::max(0.0, inner_product(f, f).real())); }

}  // namespace crgeom
