#include "crgeom/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "crgeom/be.hpp"
#include "crgeom/error.hpp"
#include "crgeom/parallel.hpp"

namespace crgeom {

namespace {

constexpr Complex I{0.0, 1.0};
constexpr std::array<Var, 4> kVars{Var::z1, Var::z1bar, Var::z2, Var::z2bar};

SphereField var(Var v) { return SphereField(Poly::variable(v)); }

TSeries derivative(const TSeries& f, Var v) {
  return f.map([v](const SphereField& g) { return SphereField(wirtinger(g.poly(), v)); });
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

const char* to_string(OperatorKind k) noexcept {
  switch (k) {
    case OperatorKind::boxb: return "boxb";
    case OperatorKind::boxb_bar: return "boxbbar";
    case OperatorKind::P4: return "P4";
    case OperatorKind::P4_alt: return "P4alt";
    case OperatorKind::Q: return "Q";
  }
  return "?";
}

std::optional<OperatorKind> parse_operator_kind(std::string_view s) {
  for (auto k : {OperatorKind::boxb, OperatorKind::boxb_bar, OperatorKind::P4, OperatorKind::P4_alt,
                 OperatorKind::Q})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

const char* to_string(Backend b) noexcept { return b == Backend::exact ? "exact" : "series"; }

bool is_self_adjoint(OperatorKind k) noexcept { return k != OperatorKind::Q; }

// ---------------------------------------------------------------------------

TSeries VectorField::apply(const TSeries& f) const {
  TSeries out(f.order());
  for (std::size_t k = 0; k < 4; ++k) {
    if (c[k].is_zero()) continue;
    out += c[k] * derivative(f, kVars[k]);
  }
  return out;
}

TSeries OneForm::operator()(const VectorField& X) const {
  TSeries out(w[0].order());
  for (std::size_t k = 0; k < 4; ++k) {
    if (w[k].is_zero() || X.c[k].is_zero()) continue;
    out += w[k] * X.c[k];
  }
  return out;
}

VectorField bracket(const VectorField& X, const VectorField& Y) {
  VectorField r;
  for (std::size_t k = 0; k < 4; ++k) r.c[k] = X.apply(Y.c[k]) - Y.apply(X.c[k]);
  return r;
}

// ---------------------------------------------------------------------------
// Deformation

Deformation Deformation::exact(const Poly& phi, double t) {
  if (!std::isfinite(t) || std::abs(t) >= 1.0)
    throw Error(ErrorCode::InvalidArgument, "deformation parameter must satisfy |t| < 1");
  const SphereField mod2 = normal_form(phi * phi.conj());
  const Complex c = mod2.poly().coefficient({});
  const double scale = std::max(1.0, std::abs(c));
  for (const auto& term : mod2.poly().terms())
    if (term.exp != Exponents{} && std::abs(term.coef) > 1e-12 * scale)
      throw Error(ErrorCode::InvalidArgument,
                  "exact backend needs |phi|^2 constant on S^3; use the series backend");
  Deformation d;
  d.backend_ = Backend::exact;
  d.phi_ = phi;
  d.order_ = 0;
  d.t_ = t;
  d.phi_bound_ = std::sqrt(std::max(0.0, c.real()));
  if (t * t * c.real() >= 1.0)
    throw Error(ErrorCode::DegenerateDeformation, "t^2 |phi|^2 >= 1: the deformed frame degenerates");
  d.build();
  return d;
}

Deformation Deformation::series(const Poly& phi, int order) {
  if (order < 1 || order > 24)
    throw Error(ErrorCode::InvalidArgument, "series order must be in [1, 24]");
  Deformation d;
  d.backend_ = Backend::series;
  d.phi_ = phi;
  d.order_ = order;
  double bound = 0.0;
  const SphereField nf = normal_form(phi);
  for (const auto& term : nf.poly().terms()) bound += std::abs(term.coef);
  d.phi_bound_ = bound;
  d.build();
  return d;
}

Deformation Deformation::automatic(const Poly& phi, double t, int order) {
  const SphereField mod2 = normal_form(phi * phi.conj());
  const double scale = std::max(1.0, std::abs(mod2.poly().coefficient({})));
  bool constant = true;
  for (const auto& term : mod2.poly().terms())
    if (term.exp != Exponents{} && std::abs(term.coef) > 1e-12 * scale) constant = false;
  return constant ? exact(phi, t) : series(phi, order);
}

void Deformation::build() {
  const int K = order_;
  auto lift = [K](const SphereField& f) { return TSeries(f, K); };
  const SphereField z1 = var(Var::z1), z1b = var(Var::z1bar), z2 = var(Var::z2), z2b = var(Var::z2bar);

  // t phi and F
  TSeries tphi(K), F(K);
  const SphereField phi = normal_form(phi_);
  if (backend_ == Backend::exact) {
    tphi[0] = phi * Complex(t_);
    const double mod2 = normal_form(phi_ * phi_.conj()).poly().coefficient({}).real();
    F[0] = SphereField::constant(1.0 / std::sqrt(1.0 - t_ * t_ * mod2));
  } else {
    if (K >= 1) tphi[1] = phi;
    // (1 - s)^{-1/2} = sum_k C(2k, k) / 4^k s^k with s = t^2 |phi|^2
    const SphereField mod2 = normal_form(phi_ * phi_.conj());
    SphereField power = SphereField::constant(1.0);
    double coef = 1.0;
    for (int k = 0; 2 * k <= K; ++k) {
      F[2 * k] = power * Complex(coef);
      power = power * mod2;
      coef *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
    }
  }
  const TSeries tphib = tphi.conj();

  const VectorField Z1{{lift(z2b), TSeries(K), lift(z1b * Complex(-1.0)), TSeries(K)}};
  const VectorField Z1b{{TSeries(K), lift(z2), TSeries(K), lift(z1 * Complex(-1.0))}};
  frame_.T = VectorField{{lift(z1 * I), lift(z1b * -I), lift(z2 * I), lift(z2b * -I)}};
  frame_.F = F;

  for (std::size_t k = 0; k < 4; ++k) {
    frame_.Z1bar.c[k] = F * (Z1b.c[k] + tphi * Z1.c[k]);
    frame_.Z1.c[k] = F * (Z1.c[k] + tphib * Z1b.c[k]);
  }
  // theta^1_t = F (theta^1 - t phi theta^1bar), theta^1(X) = z2 X^1 - z1 X^2,
  // theta^1bar(X) = z2bar X^1bar - z1bar X^2bar.
  frame_.theta1.w = {F * lift(z2), F * tphi * lift(z2b * Complex(-1.0)), F * lift(z1 * Complex(-1.0)),
                     F * tphi * lift(z1b)};
  for (std::size_t k = 0; k < 4; ++k) frame_.theta1bar.w[k] = frame_.theta1.w[k ^ 1].conj();
  // theta = (i/2)(dbar u - d u) for u = |z|^2 - 1
  frame_.theta.w = {lift(z1b * (-0.5 * I)), lift(z1 * (0.5 * I)), lift(z2b * (-0.5 * I)),
                    lift(z2 * (0.5 * I))};

  conn_.alpha1bar = frame_.theta1(bracket(frame_.Z1, frame_.Z1bar)) * Complex(-1.0);
  conn_.alpha0 = frame_.theta1(bracket(frame_.Z1, frame_.T)) * Complex(-1.0);
  conn_.torsion = frame_.theta1(bracket(frame_.Z1bar, frame_.T));
  conn_.alpha1 = conn_.alpha1bar.conj() * Complex(-1.0);
}

void Deformation::check_t(double t) const {
  if (!std::isfinite(t) || std::abs(t) >= 1.0)
    throw Error(ErrorCode::InvalidArgument, "deformation parameter must satisfy |t| < 1");
  if (backend_ == Backend::exact) {
    if (t != t_)
      throw Error(ErrorCode::InvalidArgument, "exact backend was built for another value of t");
    return;
  }
  if (t * t * phi_bound_ * phi_bound_ >= 1.0)
    throw Error(ErrorCode::DegenerateDeformation,
                "t^2 sup|phi|^2 >= 1: outside the radius of the series for F");
}

TSeries Deformation::covariant(const TSeries& g, Direction d, int n1, int n1bar) const {
  const VectorField* X = nullptr;
  const TSeries* conn = nullptr;
  switch (d) {
    case Direction::one: X = &frame_.Z1; conn = &conn_.alpha1; break;
    case Direction::onebar: X = &frame_.Z1bar; conn = &conn_.alpha1bar; break;
    case Direction::zero: X = &frame_.T; conn = &conn_.alpha0; break;
  }
  TSeries out = X->apply(g);
  // theta_1bar^1bar = -theta_1^1 when the Levi form is 1
  if (const int w = n1 - n1bar; w != 0 && !conn->is_zero()) out -= (*conn * g) * Complex(w);
  return out;
}

TSeries Deformation::boxb(const TSeries& f) const {
  return covariant(covariant(f, Direction::onebar), Direction::one, 0, 1) * Complex(-2.0);
}

TSeries Deformation::boxb_bar(const TSeries& f) const {
  return covariant(covariant(f, Direction::one), Direction::onebar, 1, 0) * Complex(-2.0);
}

TSeries Deformation::P4(const TSeries& f) const {
  const TSeries fb = covariant(f, Direction::onebar);
  const TSeries w = covariant(fb, Direction::one, 0, 1);  // f_{1bar 1}
  // P3 f = f_{1bar 1 1} + i A_11 f^1, and f^1 = f_1bar
  TSeries sigma = covariant(w, Direction::one, 1, 1);
  if (!conn_.torsion.is_zero()) sigma += (conn_.torsion.conj() * fb) * I;
  return covariant(sigma, Direction::onebar, 1, 0);
}

TSeries Deformation::Q(const TSeries& f) const {
  if (conn_.torsion.is_zero()) return TSeries(f.order());
  const TSeries X = conn_.torsion * covariant(f, Direction::one);  // A^11 f_1, index 1bar
  return covariant(X, Direction::one, 0, 1) * (2.0 * I);
}

TSeries Deformation::P4_alt(const TSeries& f) const {
  return (boxb(boxb_bar(f)) - Q(f) * Complex(2.0)) * Complex(0.25);
}

TSeries Deformation::apply(OperatorKind k, const TSeries& f) const {
  switch (k) {
    case OperatorKind::boxb: return boxb(f);
    case OperatorKind::boxb_bar: return boxb_bar(f);
    case OperatorKind::P4: return P4(f);
    case OperatorKind::P4_alt: return P4_alt(f);
    case OperatorKind::Q: return Q(f);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown operator");
}

// ---------------------------------------------------------------------------
// Galerkin assembly

AssembledOperator::AssembledOperator(OperatorKind kind, const Deformation& d, const SphereBasis& basis)
    : kind_(kind), d_(d), basis_(basis) {
  const int n = basis_.size();
  const int K = d_.order();
  columns_.resize(std::size_t(n));
  Mk_.assign(std::size_t(K) + 1, Eigen::MatrixXcd::Zero(n, n));
  parallel_for(std::size_t(n), [&](std::size_t j) {
    TSeries out = d_.apply(kind_, d_.lift(basis_.field(int(j))));
    for (int k = 0; k <= K; ++k) Mk_[std::size_t(k)].col(Eigen::Index(j)) = basis_.moments(out[k]);
    columns_[j] = std::move(out);
  });
}

OperatorMatrix AssembledOperator::at(double t) const {
  d_.check_t(t);
  const int K = d_.order();
  const double tt = d_.backend() == Backend::exact ? 1.0 : t;

  OperatorMatrix m;
  m.kind = kind_;
  m.backend = d_.backend();
  m.degree_cap = basis_.degree_cap();
  m.order = K;
  m.t = t;
  m.gram = basis_.gram();
  m.M = Eigen::MatrixXcd::Zero(basis_.size(), basis_.size());
  double tk = 1.0;
  for (int k = 0; k <= K; ++k, tk *= tt) m.M += Mk_[std::size_t(k)] * tk;
  m.norm = max_abs(m.M);
  m.hermiticity_defect = max_abs(m.M - m.M.adjoint());

  if (d_.backend() == Backend::series) {
    const double a = std::abs(t);
    const double last = std::max(K >= 1 ? Mk_[std::size_t(K - 1)].norm() : 0.0, Mk_[std::size_t(K)].norm());
    m.tail_bound = last * std::pow(a, K + 1) / (1.0 - a);
    if (m.tail_bound > 1e-8 * m.M.norm())
      throw Error(ErrorCode::SeriesOrderInsufficient,
                  "order " + std::to_string(K) + " tail bound " + std::to_string(m.tail_bound) +
                      " exceeds 1e-8 |M| at t = " + std::to_string(t));
  }

  // Residual of Op b_j outside the span: subtract the Galerkin projection
  // coefficient-wise (basis elements are monomials) and integrate exactly.
  const Eigen::LLT<Eigen::MatrixXcd> llt(m.gram);
  std::vector<double> res(std::size_t(basis_.size()), 0.0);
  parallel_for(res.size(), [&](std::size_t j) {
    const SphereField f = columns_[j].evaluate(tt);
    const Eigen::VectorXcd c = llt.solve(m.M.col(Eigen::Index(j)));
    std::vector<Term> terms(f.poly().terms().begin(), f.poly().terms().end());
    for (Eigen::Index i = 0; i < c.size(); ++i)
      if (c(i) != Complex(0.0)) terms.push_back({basis_.monomial(int(i)), -c(i)});
    const SphereField r(Poly::from_terms(std::move(terms)));
    res[j] = l2_norm(r) / std::sqrt(m.gram(Eigen::Index(j), Eigen::Index(j)).real());
  });
  m.truncation_residual = res.empty() ? 0.0 : *std::max_element(res.begin(), res.end());
  return m;
}

OperatorMatrix op_matrix(OperatorKind kind, const Deformation& d, const SphereBasis& basis) {
  return AssembledOperator(kind, d, basis).at(d.t());
}

// ---------------------------------------------------------------------------
// Eigenvalues

Spectrum spectrum(const OperatorMatrix& m) {
  Spectrum s;
  s.hermiticity_defect = m.hermiticity_defect;
  const Eigen::Index n = m.M.rows();
  if (is_self_adjoint(m.kind)) {
    if (m.hermiticity_defect > 1e-8 * std::max(1.0, m.norm))
      throw Error(ErrorCode::NotHermitian,
                  "operator matrix is not Hermitian (defect " + std::to_string(m.hermiticity_defect) + ")");
    const Eigen::MatrixXcd H = 0.5 * (m.M + m.M.adjoint());
    const Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(H, m.gram);
    if (es.info() != Eigen::Success)
      throw Error(ErrorCode::NotHermitian, "generalized eigen-solve failed");
    s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    s.vectors = es.eigenvectors();
  } else {
    // G^{-1} M through the Cholesky factor: L^{-1} M L^{-*} is similar to it.
    const Eigen::LLT<Eigen::MatrixXcd> llt(m.gram);
    const Eigen::MatrixXcd L = llt.matrixL();
    Eigen::MatrixXcd C = L.triangularView<Eigen::Lower>().solve(m.M);
    C = L.triangularView<Eigen::Lower>().solve(C.adjoint()).adjoint();
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C);
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    const auto& ev = es.eigenvalues();
    std::sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
      if (ev(a).real() != ev(b).real()) return ev(a).real() < ev(b).real();
      return ev(a).imag() < ev(b).imag();
    });
    s.vectors.resize(n, n);
    const Eigen::MatrixXcd Linv_adj = L.adjoint().triangularView<Eigen::Upper>().solve(es.eigenvectors());
    for (Eigen::Index k = 0; k < n; ++k) {
      s.eigenvalues.push_back(ev(idx[std::size_t(k)]).real());
      s.eigenvalues_imag.push_back(ev(idx[std::size_t(k)]).imag());
      s.vectors.col(k) = Linv_adj.col(idx[std::size_t(k)]);
    }
  }
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    const double im = s.eigenvalues_imag.empty() ? 0.0 : s.eigenvalues_imag[k];
    s.norm = std::max(s.norm, std::hypot(s.eigenvalues[k], im));
  }
  s.kernel_tol = 1e-8 * s.norm;
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    const double im = s.eigenvalues_imag.empty() ? 0.0 : s.eigenvalues_imag[k];
    if (std::hypot(s.eigenvalues[k], im) <= s.kernel_tol) {
      ++s.kernel_dim;
    } else if (!s.min_nonkernel || s.eigenvalues[k] < *s.min_nonkernel) {
      s.min_nonkernel = s.eigenvalues[k];
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

double rossi_formula(double t) {
  const double u = 1.0 - t * t;
  return -3.0 * t * t / (u * u);
}

RossiResult rossi_lambda(double t, int N) {
  const Deformation d = Deformation::exact(Poly::constant(1.0), t);
  const SphereBasis basis(N);
  const OperatorMatrix m = op_matrix(OperatorKind::P4, d, basis);
  const Spectrum s = spectrum(m);

  const Eigen::VectorXcd z1 = basis.coordinates(normal_form(Poly::variable(Var::z1)));
  const Eigen::VectorXcd Gz1 = m.gram * z1;
  const double z1n2 = z1.dot(Gz1).real();
  RossiResult r;
  r.t = t;
  r.degree_cap = N;
  Eigen::Index best = 0;
  for (Eigen::Index k = 0; k < s.vectors.cols(); ++k) {
    const Eigen::VectorXcd x = s.vectors.col(k);
    const double ov = std::norm(x.dot(Gz1)) / (x.dot(m.gram * x).real() * z1n2);
    // ties (degenerate eigenspaces) resolve to the lowest eigenvalue
    if (ov > r.overlap + 1e-12) {
      r.overlap = ov;
      best = k;
    }
  }
  r.lambda = s.eigenvalues[std::size_t(best)];
  r.formula = rossi_formula(t);
  r.abs_err = std::abs(r.lambda - r.formula);
  const Eigen::VectorXcd x = s.vectors.col(best);
  r.galerkin_residual = (m.M * x - r.lambda * (m.gram * x)).norm();

  const SphereField zf = normal_form(Poly::variable(Var::z1));
  const SphereField pz = d.P4(d.lift(zf))[0];
  r.residual = l2_norm(pz - zf * Complex(r.lambda)) / l2_norm(zf);
  return r;
}

ProbeReport nonneg_probe(const Poly& phi, std::span<const double> ts, int N, int K) {
  if (ts.empty()) throw Error(ErrorCode::InvalidArgument, "probe needs at least one t");
  ProbeReport rep;
  rep.degree_cap = N;
  rep.order = K;
  const BEVerdict be = check_be(phi);
  rep.be_pass = be.pass;
  rep.verdict = embeddability_verdict(be);

  const SphereBasis basis(N);
  const Deformation first = Deformation::automatic(phi, ts[0], K);
  rep.backend = first.backend();
  std::optional<AssembledOperator> series_op;
  if (rep.backend == Backend::series) series_op.emplace(OperatorKind::P4, first, basis);

  for (double t : ts) {
    OperatorMatrix m = rep.backend == Backend::series
                           ? series_op->at(t)
                           : op_matrix(OperatorKind::P4, Deformation::exact(phi, t), basis);
    const Spectrum s = spectrum(m);
    ProbePoint pt;
    pt.t = t;
    pt.min_eigenvalue = s.eigenvalues.front();
    pt.min_nonkernel = s.min_nonkernel;
    pt.kernel_dim = s.kernel_dim;
    pt.kernel_tol = s.kernel_tol;
    pt.truncation_residual = m.truncation_residual;
    pt.tail_bound = m.tail_bound;
    pt.hermiticity_defect = m.hermiticity_defect;
    for (double ev : s.eigenvalues) pt.negative_count += ev < -s.kernel_tol;
    rep.negative_found = rep.negative_found || pt.negative_count > 0;
    rep.points.push_back(pt);
  }
  return rep;
}

}  // namespace crgeom
