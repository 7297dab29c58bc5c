#pragma once

// Fourier decomposition of a deformation function on S^3 into spherical
// harmonics and the Burns-Epstein condition: phi_{pq} = 0 whenever p < q + 4.

#include <string>
#include <vector>

#include "crgeom/harmonic.hpp"

namespace crgeom {

struct HarmonicComponent {
  int p = 0;
  int q = 0;
  SphereField field;
  double norm = 0.0;  ///< L^2 norm on S^3
};

struct FourierDecomp {
  std::vector<HarmonicComponent> components;  ///< non-zero ones, ordered by (p + q, p)
  double norm2 = 0.0;                         ///< ||phi||^2
  double parseval_defect = 0.0;               ///< |sum ||phi_pq||^2 - ||phi||^2|
  double sum_defect = 0.0;                    ///< ||sum phi_pq - phi||
};

/// Components with norm <= drop_tol are omitted. Throws DegreeCapExceeded if
/// deg phi > N (or N > kMaxDegree).
FourierDecomp decompose(const Poly& phi, int N, double drop_tol = 0.0);

inline constexpr double kBETolerance = 1e-10;

struct BEViolation {
  int p, q;
  double norm;
};

struct BEVerdict {
  bool pass = true;
  std::vector<BEViolation> violations;
  FourierDecomp decomposition;
};

BEVerdict check_be(const Poly& phi, double tol = kBETolerance);

/// "embeddable (small t)" or "non-embeddable (small t)".
std::string embeddability_verdict(const BEVerdict& v);

}  // namespace crgeom
