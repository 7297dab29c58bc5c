#pragma once

// JSON reports shared by the C API and the command-line tool. Every report
// carries a "meta" block {tool_version, command, seed, tolerances}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "crgeom/ellipsoid.hpp"
#include "crgeom/hypersurface.hpp"
#include "crgeom/spectral.hpp"

namespace crgeom {

const char* tool_version() noexcept;

/// Either explicit points or a seeded sample of the surface.
struct PointSource {
  int samples = 100;
  std::uint64_t seed = 0;
  std::optional<std::vector<PointC2>> points;
};

/// Accepts [{"z1":[re,im],"z2":[re,im]}, ...] or [[z1re,z1im,z2re,z2im], ...],
/// optionally wrapped as {"points": [...]}.
std::vector<PointC2> points_from_json(const nlohmann::json& j);

nlohmann::json webster_report(const Poly& u, const PointSource& src, const SurfaceTolerances& tol = {});
nlohmann::json monge_ampere_report(const Poly& u, const PointSource& src, const SurfaceTolerances& tol = {});
nlohmann::json ellipsoid_report(const EllipsoidParams& p, int samples, std::uint64_t seed,
                                const SurfaceTolerances& tol = {});
nlohmann::json rossi_report(double t, int N);

struct SpectrumRequest {
  Poly phi;
  double t = 0.0;
  int degree = 6;
  std::optional<Backend> backend;  ///< unset: exact when |phi|^2 is constant on S^3
  int order = 8;
  OperatorKind op = OperatorKind::P4;
};
nlohmann::json spectrum_report(const SpectrumRequest& r);

nlohmann::json be_report(const Poly& phi);
nlohmann::json probe_report(const Poly& phi, const std::vector<double>& ts, int N, int K);

}  // namespace crgeom
