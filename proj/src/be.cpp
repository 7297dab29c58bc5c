#include "crgeom/be.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "crgeom/error.hpp"

namespace crgeom {

FourierDecomp decompose(const Poly& phi, int N, double drop_tol) {
  if (N > kMaxDegree)
    throw Error(ErrorCode::DegreeCapExceeded, "degree cap above " + std::to_string(kMaxDegree));
  const SphereField f = normal_form(phi);
  const int deg = f.poly().degree();
  if (deg > N)
    throw Error(ErrorCode::DegreeCapExceeded,
                "phi has degree " + std::to_string(deg) + " above the cap " + std::to_string(N));

  // H_{p,q} has total torus weight p - q; skip bidegrees that cannot occur.
  std::set<int> weights;
  for (const auto& t : f.poly().terms()) weights.insert(t.exp.p() - t.exp.q());

  FourierDecomp out;
  out.norm2 = inner_product(f, f).real();
  SphereField sum;
  double sum2 = 0.0;
  for (int d = 0; d <= deg; ++d)
    for (int p = d; p >= 0; --p) {
      const int q = d - p;
      if (!weights.count(p - q)) continue;
      SphereField c = harmonic_project(f, p, q);
      const double n2 = inner_product(c, c).real();
      sum += c;
      sum2 += n2;
      const double n = std::sqrt(std::max(0.0, n2));
      if (n > drop_tol && !c.is_zero()) out.components.push_back({p, q, std::move(c), n});
    }
  out.parseval_defect = std::abs(sum2 - out.norm2);
  out.sum_defect = l2_norm(sum - f);
  return out;
}

BEVerdict check_be(const Poly& phi, double tol) {
  BEVerdict v;
  v.decomposition = decompose(phi, std::max(1, normal_form(phi).poly().degree()));
  for (const auto& c : v.decomposition.components)
    if (c.p < c.q + 4 && c.norm > tol) v.violations.push_back({c.p, c.q, c.norm});
  v.pass = v.violations.empty();
  return v;
}

std::string embeddability_verdict(const BEVerdict& v) {
  return v.pass ? "embeddable (small t)" : "non-embeddable (small t)";
}

}  // namespace crgeom
