#include "crgeom/crgeom.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "crgeom/error.hpp"
#include "crgeom/parallel.hpp"
#include "crgeom/poly_io.hpp"
#include "crgeom/report.hpp"

struct crg_poly {
  crgeom::Poly p;
};

struct crg_spectrum {
  nlohmann::json report;
  std::vector<double> eigenvalues;
  int kernel_dim = 0;
};

namespace {

thread_local std::string last_error;

crg_status set_error(crg_status s, const char* what) {
  last_error = what;
  return s;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

// Runs fn, translating exceptions into status codes.
template <class Fn>
crg_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return CRG_OK;
  } catch (const crgeom::Error& e) {
    return set_error(static_cast<crg_status>(static_cast<int>(e.code()) + 1), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(CRG_PARSE, (std::string("Parse: ") + e.what()).c_str());
  } catch (const std::bad_alloc&) {
    return set_error(CRG_INTERNAL, "Internal: out of memory");
  } catch (const std::exception& e) {
    return set_error(CRG_INTERNAL, (std::string("Internal: ") + e.what()).c_str());
  } catch (...) {
    return set_error(CRG_INTERNAL, "Internal: unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw crgeom::Error(crgeom::ErrorCode::InvalidArgument, what);
}

crgeom::SurfaceTolerances surface_tol(const crg_surface_tolerances* t) {
  crgeom::SurfaceTolerances out;
  if (!t) return out;
  for (double v : {t->surface, t->levi, t->gradient, t->cross})
    require(std::isfinite(v) && v > 0.0, "tolerances must be finite and positive");
  out.surface = t->surface;
  out.levi = t->levi;
  out.gradient = t->gradient;
  out.cross = t->cross;
  return out;
}

crgeom::PointSource point_source(const char* points_json, int samples, uint64_t seed) {
  crgeom::PointSource src;
  src.seed = seed;
  if (points_json) {
    src.points = crgeom::points_from_json(nlohmann::json::parse(points_json));
  } else {
    require(samples >= 1, "samples must be >= 1");
    src.samples = samples;
  }
  return src;
}

crgeom::SpectrumRequest spectrum_request(const crg_spectrum_request* r) {
  require(r != nullptr, "null spectrum request");
  require(std::isfinite(r->t) && std::abs(r->t) < 1.0, "|t| must be < 1");
  require(r->degree >= 1, "degree must be >= 1");
  require(r->order >= 1, "order must be >= 1");
  require(r->op >= CRG_OP_BOXB && r->op <= CRG_OP_Q, "unknown operator");
  crgeom::SpectrumRequest q;
  if (r->phi) q.phi = r->phi->p;
  q.t = r->t;
  q.degree = r->degree;
  q.order = r->order;
  q.op = static_cast<crgeom::OperatorKind>(r->op);
  switch (r->backend) {
    case CRG_BACKEND_AUTO: break;
    case CRG_BACKEND_EXACT: q.backend = crgeom::Backend::exact; break;
    case CRG_BACKEND_SERIES: q.backend = crgeom::Backend::series; break;
    default: require(false, "unknown backend");
  }
  return q;
}

}  // namespace

extern "C" {

const char* crg_version(void) { return crgeom::tool_version(); }

const char* crg_status_name(crg_status s) {
  if (s == CRG_OK) return "OK";
  if (s >= CRG_INVALID_ARGUMENT && s <= CRG_DEGREE_CAP_EXCEEDED)
    return crgeom::to_string(static_cast<crgeom::ErrorCode>(static_cast<int>(s) - 1));
  return "Internal";
}

int crg_status_is_numerical(crg_status s) {
  if (s >= CRG_INVALID_ARGUMENT && s <= CRG_DEGREE_CAP_EXCEEDED)
    return crgeom::is_numerical(static_cast<crgeom::ErrorCode>(static_cast<int>(s) - 1)) ? 1 : 0;
  return 0;
}

const char* crg_last_error(void) { return last_error.c_str(); }

void crg_string_free(char* s) { std::free(s); }

void crg_set_threads(int n) { crgeom::set_worker_threads(n < 0 ? 0 : n); }

int crg_threads(void) { return crgeom::worker_threads(); }

crg_status crg_poly_from_json(const char* text, int require_real, crg_poly** out) {
  return guarded([&] {
    require(text && out, "null argument");
    *out = nullptr;
    auto p = std::make_unique<crg_poly>();
    p->p = crgeom::poly_from_json_text(text, require_real != 0);
    *out = p.release();
  });
}

crg_status crg_poly_to_json(const crg_poly* p, char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = dup_string(crgeom::poly_to_json(p->p).dump());
  });
}

crg_status crg_poly_eval(const crg_poly* p, double z1_re, double z1_im, double z2_re, double z2_im,
                         double* re, double* im) {
  return guarded([&] {
    require(p && re && im, "null argument");
    const crgeom::Complex v = p->p.eval({z1_re, z1_im}, {z2_re, z2_im});
    *re = v.real();
    *im = v.imag();
  });
}

void crg_poly_free(crg_poly* p) { delete p; }

void crg_surface_tolerances_default(crg_surface_tolerances* tol) {
  if (!tol) return;
  const crgeom::SurfaceTolerances d;
  *tol = {d.surface, d.levi, d.gradient, d.cross};
}

crg_status crg_webster_report(const crg_poly* u, const char* points_json, int samples, uint64_t seed,
                              const crg_surface_tolerances* tol, char** out) {
  return guarded([&] {
    require(u && out, "null argument");
    *out = dup_string(dump(crgeom::webster_report(u->p, point_source(points_json, samples, seed), surface_tol(tol))));
  });
}

crg_status crg_monge_ampere_report(const crg_poly* u, const char* points_json, int samples, uint64_t seed,
                                   const crg_surface_tolerances* tol, char** out) {
  return guarded([&] {
    require(u && out, "null argument");
    *out = dup_string(
        dump(crgeom::monge_ampere_report(u->p, point_source(points_json, samples, seed), surface_tol(tol))));
  });
}

crg_status crg_ellipsoid_report(double A1, double B1, double A2, double B2, int samples, uint64_t seed,
                                const crg_surface_tolerances* tol, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(samples >= 1, "samples must be >= 1");
    *out = dup_string(dump(crgeom::ellipsoid_report({A1, B1, A2, B2}, samples, seed, surface_tol(tol))));
  });
}

crg_status crg_operator_from_name(const char* name, crg_operator* out) {
  return guarded([&] {
    require(name && out, "null argument");
    auto k = crgeom::parse_operator_kind(name);
    require(k.has_value(), "operator must be one of boxb, boxbbar, P4, P4alt, Q");
    *out = static_cast<crg_operator>(*k);
  });
}

void crg_spectrum_request_default(crg_spectrum_request* r) {
  if (!r) return;
  *r = {nullptr, 0.0, 6, CRG_OP_P4, CRG_BACKEND_AUTO, 8};
}

crg_status crg_rossi_report(double t, int degree, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(std::isfinite(t) && std::abs(t) < 1.0, "|t| must be < 1");
    require(degree >= 1, "degree must be >= 1");
    *out = dup_string(dump(crgeom::rossi_report(t, degree)));
  });
}

crg_status crg_spectrum_report(const crg_spectrum_request* r, char** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = dup_string(dump(crgeom::spectrum_report(spectrum_request(r))));
  });
}

crg_status crg_be_report(const crg_poly* phi, char** out) {
  return guarded([&] {
    require(phi && out, "null argument");
    *out = dup_string(dump(crgeom::be_report(phi->p)));
  });
}

crg_status crg_probe_report(const crg_poly* phi, const double* ts, size_t n_ts, int degree, int order,
                            char** out) {
  return guarded([&] {
    require(phi && out && (ts || n_ts == 0), "null argument");
    require(n_ts >= 1, "at least one t is required");
    require(degree >= 1, "degree must be >= 1");
    require(order >= 1, "order must be >= 1");
    std::vector<double> v(ts, ts + n_ts);
    for (double t : v) require(std::isfinite(t) && std::abs(t) < 1.0, "|t| must be < 1");
    *out = dup_string(dump(crgeom::probe_report(phi->p, v, degree, order)));
  });
}

crg_status crg_spectrum_compute(const crg_spectrum_request* r, crg_spectrum** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = nullptr;
    auto s = std::make_unique<crg_spectrum>();
    s->report = crgeom::spectrum_report(spectrum_request(r));
    s->eigenvalues = s->report.at("eigenvalues").get<std::vector<double>>();
    s->kernel_dim = s->report.at("kernel_dim").get<int>();
    *out = s.release();
  });
}

size_t crg_spectrum_size(const crg_spectrum* s) { return s ? s->eigenvalues.size() : 0; }

double crg_spectrum_eigenvalue(const crg_spectrum* s, size_t i) {
  if (!s || i >= s->eigenvalues.size()) return std::nan("");
  return s->eigenvalues[i];
}

int crg_spectrum_kernel_dim(const crg_spectrum* s) { return s ? s->kernel_dim : 0; }

crg_status crg_spectrum_to_json(const crg_spectrum* s, char** out) {
  return guarded([&] {
    require(s && out, "null argument");
    *out = dup_string(dump(s->report));
  });
}

void crg_spectrum_free(crg_spectrum* s) { delete s; }

}  // extern "C"
