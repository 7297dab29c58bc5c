#include "crgeom/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crgeom/be.hpp"
#include "crgeom/error.hpp"
#include "crgeom/parallel.hpp"
#include "crgeom/poly_io.hpp"

#ifndef CRGEOM_VERSION
#define CRGEOM_VERSION "0.0.0"
#endif

namespace crgeom {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json surface_tolerances(const SurfaceTolerances& t) {
  return {{"surface", t.surface}, {"levi", t.levi}, {"gradient", t.gradient}, {"cross", t.cross}};
}

json spectral_tolerances() {
  return {{"kernel_rel", 1e-8}, {"hermitian_rel", 1e-8}, {"series_tail_rel", 1e-8}};
}

json meta(const char* command, std::uint64_t seed, json tolerances) {
  return {{"tool_version", tool_version()},
          {"command", command},
          {"seed", seed},
          {"tolerances", std::move(tolerances)}};
}

json point_json(PointC2 p) { return {{"z1", complex_json(p.z1)}, {"z2", complex_json(p.z2)}}; }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::vector<PointC2> resolve_points(const Poly& u, const PointSource& src) {
  if (src.points) {
    if (src.points->empty()) throw Error(ErrorCode::InvalidArgument, "point list is empty");
    return *src.points;
  }
  return sample_surface(u, src.samples, src.seed);
}

// A defining function with identically vanishing Levi determinant (a real
// hyperplane, say) fails before any sampling.
void require_levi_nondegenerate(const Poly& u) {
  if (fefferman_levi(u).max_abs_coefficient() <= 1e-14 * std::max(1.0, u.max_abs_coefficient()))
    throw Error(ErrorCode::NotStrictlyPseudoconvex, "the Levi determinant -J(u) vanishes identically");
}

}  // namespace

const char* tool_version() noexcept { return CRGEOM_VERSION; }

std::vector<PointC2> points_from_json(const json& j_in) {
  const json& j = j_in.is_object() && j_in.contains("points") ? j_in.at("points") : j_in;
  if (!j.is_array()) throw Error(ErrorCode::Parse, "points must be a JSON array");
  auto num = [](const json& x) {
    if (!x.is_number()) throw Error(ErrorCode::Parse, "point coordinates must be numbers");
    const double v = x.get<double>();
    if (!std::isfinite(v)) throw Error(ErrorCode::Parse, "point coordinates must be finite");
    return v;
  };
  auto cplx = [&](const json& x) {
    if (!x.is_array() || x.size() != 2) throw Error(ErrorCode::Parse, "complex value must be [re, im]");
    return Complex(num(x[0]), num(x[1]));
  };
  std::vector<PointC2> out;
  for (const auto& p : j) {
    if (p.is_array() && p.size() == 4) {
      out.push_back({Complex(num(p[0]), num(p[1])), Complex(num(p[2]), num(p[3]))});
    } else if (p.is_object() && p.contains("z1") && p.contains("z2")) {
      out.push_back({cplx(p.at("z1")), cplx(p.at("z2"))});
    } else {
      throw Error(ErrorCode::Parse, "each point is {\"z1\":[re,im],\"z2\":[re,im]} or [z1re,z1im,z2re,z2im]");
    }
  }
  return out;
}

json webster_report(const Poly& u, const PointSource& src, const SurfaceTolerances& tol) {
  require_levi_nondegenerate(u);
  const auto pts = resolve_points(u, src);
  const Poly oriented = orient(u, pts.front(), tol);
  const SurfaceGeometry geom(oriented, tol);

  struct Row {
    FrameData f;
    ConnectionData c;
    double ma = 0.0;
  };
  std::vector<Row> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    rows[i].f = geom.frame_at(pts[i]);
    rows[i].c = geom.connection_at(pts[i]);
    rows[i].ma = monge_ampere_defect(oriented, pts[i], tol);
  });

  json points = json::array();
  double min_R = std::numeric_limits<double>::infinity(), max_R = -min_R, min_h = min_R;
  double route = 0.0, structure = 0.0, torsion = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Row& r = rows[i];
    json p = point_json(pts[i]);
    p["h"] = r.f.h;
    p["R"] = r.c.R;
    p["torsion_abs"] = std::abs(r.c.torsion);
    p["ma_defect"] = r.ma;
    points.push_back(std::move(p));
    min_R = std::min(min_R, r.c.R);
    max_R = std::max(max_R, r.c.R);
    min_h = std::min(min_h, r.f.h);
    route = std::max(route, r.c.route_reldiff);
    structure = std::max(structure, r.c.structure_residual);
    torsion = std::max(torsion, std::abs(r.c.torsion));
  }
  return {{"meta", meta("webster", src.points ? 0 : src.seed, surface_tolerances(tol))},
          {"defining", poly_to_json(u)},
          {"negated", !(oriented == u)},
          {"points", std::move(points)},
          {"summary",
           {{"count", pts.size()},
            {"min_R", min_R},
            {"max_R", max_R},
            {"min_h", min_h},
            {"route_max_reldiff", route},
            {"max_structure_residual", structure},
            {"max_torsion_abs", torsion}}}};
}

json monge_ampere_report(const Poly& u, const PointSource& src, const SurfaceTolerances& tol) {
  const auto pts = resolve_points(u, src);
  std::vector<double> d(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { d[i] = monge_ampere_defect(u, pts[i], tol); });
  json points = json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    json p = point_json(pts[i]);
    p["ma_defect"] = d[i];
    points.push_back(std::move(p));
    worst = std::max(worst, std::abs(d[i]));
  }
  return {{"meta", meta("monge-ampere", src.points ? 0 : src.seed, surface_tolerances(tol))},
          {"defining", poly_to_json(u)},
          {"points", std::move(points)},
          {"summary", {{"count", pts.size()}, {"max_abs_defect", worst}}}};
}

json ellipsoid_report(const EllipsoidParams& p, int samples, std::uint64_t seed, const SurfaceTolerances& tol) {
  const PositivityReport rep = positivity_report(p, samples, seed, tol);
  json points = json::array();
  double torsion = 0.0;
  for (const auto& s : rep.samples) {
    json q = point_json(s.pt);
    q["h"] = s.h;
    q["R"] = s.R_closed;
    q["R_general"] = s.R_general;
    q["reldiff"] = s.reldiff;
    q["torsion_abs"] = s.torsion_abs;
    q["ma_defect"] = s.ma_defect;
    points.push_back(std::move(q));
    torsion = std::max(torsion, s.torsion_abs);
  }
  json exact = nullptr;
  if (rep.exact_certificates)
    exact = json::array({(*rep.exact_certificates)[0].str(), (*rep.exact_certificates)[1].str()});
  return {{"meta", meta("ellipsoid", seed, surface_tolerances(tol))},
          {"params", {{"A1", p.A1}, {"B1", p.B1}, {"A2", p.A2}, {"B2", p.B2}}},
          {"derived", {{"a1", p.a1()}, {"b1", p.b1()}, {"a2", p.a2()}, {"b2", p.b2()}}},
          {"points", std::move(points)},
          {"certificates", json::array({rep.certificates[0], rep.certificates[1]})},
          {"exact_certificates", exact},
          {"closed_vs_general_max_reldiff", rep.max_reldiff},
          {"positive", rep.positive},
          {"summary",
           {{"count", rep.samples.size()},
            {"min_R", rep.min_R},
            {"max_R", rep.max_R},
            {"min_h", rep.min_h},
            {"route_max_reldiff", rep.max_reldiff},
            {"max_torsion_abs", torsion}}}};
}

json rossi_report(double t, int N) {
  const RossiResult r = rossi_lambda(t, N);
  return {{"meta", meta("rossi", 0, spectral_tolerances())},
          {"t", t},
          {"degree", N},
          {"lambda", r.lambda},
          {"formula_lambda", r.formula},
          {"abs_err", r.abs_err},
          {"residual", r.residual},
          {"galerkin_residual", r.galerkin_residual},
          {"overlap", r.overlap}};
}

json spectrum_report(const SpectrumRequest& r) {
  const SphereBasis basis(r.degree);
  Deformation d = r.backend == Backend::series    ? Deformation::series(r.phi, r.order)
                  : r.backend == Backend::exact   ? Deformation::exact(r.phi, r.t)
                                                  : Deformation::automatic(r.phi, r.t, r.order);
  const OperatorMatrix m = AssembledOperator(r.op, d, basis).at(d.backend() == Backend::exact ? d.t() : r.t);
  const Spectrum s = spectrum(m);
  json out = {{"meta", meta("spectrum", 0, spectral_tolerances())},
              {"op", to_string(r.op)},
              {"phi", poly_to_json(r.phi)},
              {"t", r.t},
              {"degree", r.degree},
              {"basis_size", basis.size()},
              {"backend", to_string(d.backend())},
              {"order", d.order()},
              {"eigenvalues", s.eigenvalues},
              {"kernel_dim", s.kernel_dim},
              {"kernel_tol", s.kernel_tol},
              {"min_nonkernel", optional_number(s.min_nonkernel)},
              {"min_eigenvalue", s.eigenvalues.empty() ? json(nullptr) : json(s.eigenvalues.front())},
              {"hermiticity_defect", s.hermiticity_defect},
              {"truncation_residual", m.truncation_residual},
              {"tail_bound", m.tail_bound}};
  if (!s.eigenvalues_imag.empty()) out["eigenvalues_imag"] = s.eigenvalues_imag;
  return out;
}

json be_report(const Poly& phi) {
  const BEVerdict v = check_be(phi);
  json comps = json::array(), viol = json::array();
  for (const auto& c : v.decomposition.components) {
    if (c.norm <= kBETolerance) continue;
    comps.push_back({{"p", c.p}, {"q", c.q}, {"norm", c.norm}});
  }
  for (const auto& x : v.violations) viol.push_back({{"p", x.p}, {"q", x.q}, {"norm", x.norm}});
  return {{"meta", meta("be-check", 0, {{"be_tol", kBETolerance}})},
          {"phi", poly_to_json(phi)},
          {"pass", v.pass},
          {"verdict", embeddability_verdict(v)},
          {"violations", std::move(viol)},
          {"components", std::move(comps)},
          {"norm", std::sqrt(v.decomposition.norm2)},
          {"parseval_defect", v.decomposition.parseval_defect}};
}

json probe_report(const Poly& phi, const std::vector<double>& ts, int N, int K) {
  const ProbeReport r = nonneg_probe(phi, ts, N, K);
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"t", p.t},
                   {"min_eigenvalue", p.min_eigenvalue},
                   {"min_nonkernel", optional_number(p.min_nonkernel)},
                   {"kernel_dim", p.kernel_dim},
                   {"kernel_tol", p.kernel_tol},
                   {"negative_count", p.negative_count},
                   {"truncation_residual", p.truncation_residual},
                   {"tail_bound", p.tail_bound},
                   {"hermiticity_defect", p.hermiticity_defect}});
  return {{"meta", meta("probe", 0, spectral_tolerances())},
          {"phi", poly_to_json(phi)},
          {"degree", N},
          {"order", r.order},
          {"backend", to_string(r.backend)},
          {"be_pass", r.be_pass},
          {"verdict", r.verdict},
          {"negative_found", r.negative_found},
          {"points", std::move(pts)}};
}

}  // namespace crgeom
