#pragma once

// Galerkin spectral engine on S^3 for the deformed CR structures
//   Zbar1^t = F (Zbar1 + t phi Z1),  F = (1 - t^2 |phi|^2)^{-1/2},
// with theta fixed, so the Levi form stays 1 and the volume form is the
// standard one. Frame fields are kept as t-series of sphere functions: the
// exact backend substitutes t up front (order 0), the series backend keeps
// t symbolic to a fixed order.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "crgeom/harmonic.hpp"
#include "crgeom/tseries.hpp"

namespace crgeom {

enum class OperatorKind { boxb, boxb_bar, P4, P4_alt, Q };
enum class Backend { exact, series };

/// CLI spellings: boxb, boxbbar, P4, P4alt, Q.
const char* to_string(OperatorKind k) noexcept;
std::optional<OperatorKind> parse_operator_kind(std::string_view s);
const char* to_string(Backend b) noexcept;
/// Q is the only kind that is not formally self-adjoint.
bool is_self_adjoint(OperatorKind k) noexcept;

/// Ambient vector field sum_k c[k] d/dv_k with v = (z1, z1bar, z2, z2bar).
struct VectorField {
  std::array<TSeries, 4> c;
  /// Fields tangent to S^3 act on functions on S^3 independently of the
  /// extension, so normal forms can be taken at every step.
  TSeries apply(const TSeries& f) const;
};

/// One-form sum_k w[k] dv_k.
struct OneForm {
  std::array<TSeries, 4> w;
  TSeries operator()(const VectorField& X) const;
};

VectorField bracket(const VectorField& X, const VectorField& Y);

struct DeformedFrame {
  VectorField Z1, Z1bar, T;
  OneForm theta1, theta1bar, theta;
  TSeries F;
};

/// theta_1^1 = alpha1 theta^1 + alpha1bar theta^1bar + alpha0 theta, and
/// tau^1 = torsion theta^1bar (so A^1_1bar = torsion, A_11 = conj(torsion)).
struct ConnectionCoeffs {
  TSeries alpha1, alpha1bar, alpha0, torsion;
};

enum class Direction { one, onebar, zero };

class Deformation {
 public:
  /// Exact-t backend. Requires normal_form(|phi|^2) constant on S^3
  /// (InvalidArgument otherwise) and t^2 |phi|^2 < 1 (DegenerateDeformation).
  static Deformation exact(const Poly& phi, double t);
  /// Series backend in t up to the given order.
  static Deformation series(const Poly& phi, int order);
  /// Exact when |phi|^2 is constant on S^3, otherwise series of the given order.
  static Deformation automatic(const Poly& phi, double t, int order);
  static Deformation undeformed() { return exact(Poly(), 0.0); }

  Backend backend() const noexcept { return backend_; }
  const Poly& phi() const noexcept { return phi_; }
  int order() const noexcept { return order_; }
  /// The substituted t for the exact backend; 0 for the series backend.
  double t() const noexcept { return t_; }
  /// Upper bound for sup |phi| on S^3.
  double phi_bound() const noexcept { return phi_bound_; }

  const DeformedFrame& frame() const noexcept { return frame_; }
  const ConnectionCoeffs& connection() const noexcept { return conn_; }

  TSeries lift(const SphereField& f) const { return TSeries(f, order_); }

  /// Covariant derivative along Z1, Zbar1 or T of a tensor coefficient with
  /// n1 lower 1-indices and n1bar lower 1bar-indices (Levi form is 1).
  TSeries covariant(const TSeries& g, Direction d, int n1 = 0, int n1bar = 0) const;

  TSeries boxb(const TSeries& f) const;
  TSeries boxb_bar(const TSeries& f) const;
  TSeries P4(const TSeries& f) const;
  /// (boxb boxb_bar f - 2 Q f) / 4
  TSeries P4_alt(const TSeries& f) const;
  TSeries Q(const TSeries& f) const;
  TSeries apply(OperatorKind k, const TSeries& f) const;

  /// Throws DegenerateDeformation if t^2 sup|phi|^2 >= 1, and InvalidArgument
  /// for an exact backend queried at another t.
  void check_t(double t) const;

 private:
  Deformation() = default;
  void build();

  Backend backend_ = Backend::exact;
  Poly phi_;
  int order_ = 0;
  double t_ = 0.0;
  double phi_bound_ = 0.0;
  DeformedFrame frame_;
  ConnectionCoeffs conn_;
};

struct OperatorMatrix {
  OperatorKind kind = OperatorKind::P4;
  Backend backend = Backend::exact;
  int degree_cap = 0;
  int order = 0;
  double t = 0.0;
  Eigen::MatrixXcd M;     ///< M_ij = <Op b_j, b_i>
  Eigen::MatrixXcd gram;  ///< G_ij = <b_j, b_i>
  double norm = 0.0;                 ///< max |M_ij|
  double hermiticity_defect = 0.0;   ///< max |M - M^*|
  /// max_j ||Op b_j - (Galerkin projection)|| / ||b_j||
  double truncation_residual = 0.0;
  /// Series backend: estimate of the dropped orders, max(|M_{K-1}|, |M_K|) |t|^{K+1} / (1 - |t|).
  double tail_bound = 0.0;
};

/// Operator applied to every basis element once; for the series backend the
/// matrix is kept per power of t and summed at the requested t.
class AssembledOperator {
 public:
  AssembledOperator(OperatorKind kind, const Deformation& d, const SphereBasis& basis);

  OperatorKind kind() const noexcept { return kind_; }
  const Deformation& deformation() const noexcept { return d_; }
  const SphereBasis& basis() const noexcept { return basis_; }
  const std::vector<Eigen::MatrixXcd>& orders() const noexcept { return Mk_; }

  /// Throws SeriesOrderInsufficient when the tail bound exceeds
  /// 1e-8 * ||M(t)|| (series backend), DegenerateDeformation past the radius.
  OperatorMatrix at(double t) const;

 private:
  OperatorKind kind_;
  Deformation d_;
  SphereBasis basis_;
  std::vector<TSeries> columns_;
  std::vector<Eigen::MatrixXcd> Mk_;
};

/// Exact backend convenience.
OperatorMatrix op_matrix(OperatorKind kind, const Deformation& d, const SphereBasis& basis);

struct Spectrum {
  /// Ascending. For Q (not self-adjoint) the real parts, ordered by (re, im).
  std::vector<double> eigenvalues;
  std::vector<double> eigenvalues_imag;  ///< empty for self-adjoint kinds
  Eigen::MatrixXcd vectors;              ///< basis coordinates, one column each
  double norm = 0.0;                     ///< max |lambda|
  double kernel_tol = 0.0;               ///< 1e-8 * norm
  int kernel_dim = 0;
  std::optional<double> min_nonkernel;
  double hermiticity_defect = 0.0;
};

/// Generalized eigenproblem M x = lambda G x via Cholesky reduction. Throws
/// NotHermitian for a self-adjoint kind whose defect exceeds 1e-8 max(1, |M|).
Spectrum spectrum(const OperatorMatrix& m);

/// -3 t^2 / (1 - t^2)^2
double rossi_formula(double t);

struct RossiResult {
  double t = 0.0;
  int degree_cap = 0;
  double lambda = 0.0;
  double formula = 0.0;
  double abs_err = 0.0;
  /// ||P4 z1 - lambda z1|| / ||z1||, from the operator itself
  double residual = 0.0;
  /// ||(M - lambda G) x|| for the Gram-normalized eigenvector
  double galerkin_residual = 0.0;
  double overlap = 0.0;  ///< |<x, z1>|^2 / (||x||^2 ||z1||^2)
};

/// Paneitz eigenvalue of the phi = 1 family tracked by overlap with z1.
RossiResult rossi_lambda(double t, int N);

struct ProbePoint {
  double t = 0.0;
  double min_eigenvalue = 0.0;
  std::optional<double> min_nonkernel;
  int kernel_dim = 0;
  double kernel_tol = 0.0;
  double truncation_residual = 0.0;
  double tail_bound = 0.0;
  double hermiticity_defect = 0.0;
  int negative_count = 0;  ///< eigenvalues below -kernel_tol
};

struct ProbeReport {
  int degree_cap = 0;
  int order = 0;
  Backend backend = Backend::exact;
  bool be_pass = false;
  std::string verdict;
  std::vector<ProbePoint> points;
  bool negative_found = false;
};

/// Spectrum of P4^t on the basis of degree <= N for each t. The exact backend
/// is used when |phi|^2 is constant on S^3, the series backend of order K
/// otherwise.
ProbeReport nonneg_probe(const Poly& phi, std::span<const double> ts, int N, int K);

}  // namespace crgeom
