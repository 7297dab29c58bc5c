#pragma once

// Bigraded polynomial spaces on S^3 and projection onto spherical harmonics
// H_{p,q} = P_{p,q} restricted to S^3, orthogonal to |z|^2 P_{p-1,q-1}.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "crgeom/ring.hpp"

namespace crgeom {

/// Largest total degree accepted by projections and bases.
inline constexpr int kMaxDegree = 16;

/// Normal-form monomials of total degree <= N, ordered by (p + q, p, key), with
/// their Gram matrix G_ij = <b_j, b_i>. As functions on S^3 they span the
/// restrictions of all polynomials of degree <= N.
class SphereBasis {
 public:
  /// Throws InvalidArgument for N < 1, DegreeCapExceeded above kMaxDegree.
  explicit SphereBasis(int N);

  int degree_cap() const noexcept { return N_; }
  int size() const noexcept { return int(mono_.size()); }
  const std::vector<Exponents>& monomials() const noexcept { return mono_; }
  Exponents monomial(int i) const { return mono_[std::size_t(i)]; }
  SphereField field(int i) const { return SphereField(Poly::monomial(mono_[std::size_t(i)])); }
  const Eigen::MatrixXcd& gram() const noexcept { return gram_; }
  /// Index of a normal-form monomial, or -1.
  int index_of(Exponents e) const;

  /// v_i = <f, b_i> for every basis element.
  Eigen::VectorXcd moments(const SphereField& f) const;
  /// Exact coordinates of f when every term is a basis monomial, else throws
  /// DegreeCapExceeded.
  Eigen::VectorXcd coordinates(const SphereField& f) const;
  SphereField combine(const Eigen::VectorXcd& c) const;

 private:
  int N_;
  std::vector<Exponents> mono_;
  std::unordered_map<std::uint64_t, int> index_;
  std::unordered_map<std::int64_t, std::vector<int>> by_weight_;
  Eigen::MatrixXcd gram_;
};

/// Orthogonal projection of f onto H_{p,q}. Throws DegreeCapExceeded when
/// p + q > kMaxDegree.
SphereField harmonic_project(const SphereField& f, int p, int q);

/// L^2 norm on S^3.
double l2_norm(const SphereField& f);

}  // namespace crgeom
