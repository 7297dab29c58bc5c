// cr-tool: command-line front end over the libcrgeom C API.

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "crgeom/crgeom.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInternal = 1, kValidation = 2, kNumerical = 3 };

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ApiFailure {
  crg_status status;
  std::string message;
};

void check(crg_status s) {
  if (s != CRG_OK) throw ApiFailure{s, crg_last_error()};
}

struct PolyHandle {
  crg_poly* p = nullptr;
  PolyHandle() = default;
  PolyHandle(const PolyHandle&) = delete;
  PolyHandle& operator=(const PolyHandle&) = delete;
  ~PolyHandle() { crg_poly_free(p); }
};

// Takes ownership of a string allocated by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  crg_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void load_poly(PolyHandle& h, const std::string& path, bool require_real) {
  check(crg_poly_from_json(read_file(path).c_str(), require_real ? 1 : 0, &h.p));
}

void require_t(double t) {
  if (!std::isfinite(t) || !(std::abs(t) < 1.0)) throw Usage("--t must satisfy |t| < 1");
}

void require_positive(int v, const char* flag) {
  if (v < 1) throw Usage(std::string(flag) + " must be >= 1");
}

void require_readable(const std::string& path) {
  if (path.empty()) return;
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw Usage("input file not found: " + path);
}

// --- CSV ------------------------------------------------------------------

std::string csv_value(const json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return v.dump();
}

void meta_lines(std::ostream& os, const json& j, const std::string& prefix) {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      meta_lines(os, v, prefix + k + ".");
    } else if (!v.is_array()) {
      os << "# " << prefix << k << "=" << csv_value(v) << "\n";
    }
  }
}

// Flattens a row object; [re, im] pairs become key_re, key_im.
std::vector<std::pair<std::string, json>> flatten_row(const json& row) {
  std::vector<std::pair<std::string, json>> out;
  for (const auto& [k, v] : row.items()) {
    if (v.is_array() && v.size() == 2 && v[0].is_number()) {
      out.emplace_back(k + "_re", v[0]);
      out.emplace_back(k + "_im", v[1]);
    } else if (!v.is_object() && !v.is_array()) {
      out.emplace_back(k, v);
    }
  }
  return out;
}

void table(std::ostream& os, const json& rows) {
  bool header = true;
  for (const auto& row : rows) {
    const auto cells = flatten_row(row);
    if (header) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i].first;
      os << "\n";
      header = false;
    }
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_value(cells[i].second);
    os << "\n";
  }
}

std::string to_csv(const json& report) {
  std::ostringstream os;
  meta_lines(os, report, "");
  const std::string cmd = report.at("meta").at("command").get<std::string>();
  if (cmd == "spectrum") {
    const auto& re = report.at("eigenvalues");
    const bool has_im = report.contains("eigenvalues_imag");
    os << (has_im ? "index,eigenvalue,eigenvalue_imag\n" : "index,eigenvalue\n");
    for (std::size_t i = 0; i < re.size(); ++i) {
      os << i << "," << re[i].dump();
      if (has_im) os << "," << report.at("eigenvalues_imag")[i].dump();
      os << "\n";
    }
  } else if (cmd == "be-check") {
    table(os, report.at("components"));
  } else if (cmd == "rossi") {
    json row = report;
    row.erase("meta");
    table(os, json::array({row}));
  } else {
    table(os, report.at("points"));
  }
  return os.str();
}

// --- output ---------------------------------------------------------------

void check_output_dir(const std::string& out) {
  if (out.empty()) return;
  const fs::path dir = fs::absolute(fs::path(out)).parent_path();
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Usage("output directory does not exist: " + dir.string());
  if (fs::is_directory(out, ec)) throw Usage("output path is a directory: " + out);
}

// Temp file beside the target, then rename, so readers never see a partial report.
void write_atomically(const std::string& out, const std::string& text) {
  const fs::path target(out);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Usage("cannot write " + tmp.string());
    f << text;
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Usage("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Usage("cannot rename into " + out);
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string num(const json& v) { return v.is_number() ? fmt(v.get<double>()) : v.dump(); }

std::string summary_line(const json& r) {
  const std::string cmd = r.at("meta").at("command").get<std::string>();
  std::string s = cmd + ":";
  if (cmd == "webster" || cmd == "ellipsoid") {
    const auto& m = r.at("summary");
    s += " points=" + m.at("count").dump() + " min_R=" + num(m.at("min_R")) + " max_R=" + num(m.at("max_R")) +
         " min_h=" + num(m.at("min_h")) + " route_max_reldiff=" + num(m.at("route_max_reldiff"));
    if (cmd == "ellipsoid") s += std::string(" positive=") + (r.at("positive").get<bool>() ? "true" : "false");
  } else if (cmd == "monge-ampere") {
    s += " points=" + r.at("summary").at("count").dump() + " max_abs_defect=" + num(r.at("summary").at("max_abs_defect"));
  } else if (cmd == "rossi") {
    s += " t=" + num(r.at("t")) + " degree=" + r.at("degree").dump() + " lambda=" + num(r.at("lambda")) +
         " formula=" + num(r.at("formula_lambda")) + " abs_err=" + num(r.at("abs_err")) +
         " residual=" + num(r.at("residual"));
  } else if (cmd == "spectrum") {
    s += " op=" + r.at("op").get<std::string>() + " backend=" + r.at("backend").get<std::string>() +
         " size=" + r.at("basis_size").dump() + " min=" + num(r.at("min_eigenvalue")) +
         " kernel_dim=" + r.at("kernel_dim").dump() + " min_nonkernel=" + num(r.at("min_nonkernel"));
  } else if (cmd == "be-check") {
    s += std::string(" pass=") + (r.at("pass").get<bool>() ? "true" : "false") + " verdict=\"" +
         r.at("verdict").get<std::string>() + "\"";
  } else if (cmd == "probe") {
    s += " verdict=\"" + r.at("verdict").get<std::string>() + "\"";
    for (const auto& p : r.at("points"))
      s += " [t=" + num(p.at("t")) + " min=" + num(p.at("min_eigenvalue")) + " min_nonkernel=" +
           num(p.at("min_nonkernel")) + "]";
  }
  return s;
}

struct Globals {
  std::string out;
  std::string format = "json";
  bool quiet = false;
};

void emit(const Globals& g, const std::string& report_json) {
  const json r = json::parse(report_json);
  const std::string text = g.format == "csv" ? to_csv(r) : report_json;
  if (g.out.empty()) {
    std::cout << text << std::flush;
    if (!g.quiet) std::cerr << summary_line(r) << "\n";
  } else {
    write_atomically(g.out, text);
    if (!g.quiet) std::cout << summary_line(r) << "\n";
  }
}

struct SurfaceArgs {
  int samples = 100;
  std::uint64_t seed = 0;
  std::string points;
  crg_surface_tolerances tol{};
};

void add_sampling(CLI::App* c, SurfaceArgs& a, bool allow_points) {
  c->add_option("--samples", a.samples, "Number of sampled surface points")->capture_default_str();
  c->add_option("--seed", a.seed, "Sampling seed")->capture_default_str();
  if (allow_points)
    c->add_option("--points", a.points, "JSON file of points, overrides sampling");
  crg_surface_tolerances_default(&a.tol);
  c->add_option("--tol-surface", a.tol.surface, "Allowed |u| at a surface point")->capture_default_str();
  c->add_option("--tol-levi", a.tol.levi, "Lower bound for the Levi scalar")->capture_default_str();
  c->add_option("--tol-gradient", a.tol.gradient, "Lower bound for |du|")->capture_default_str();
  c->add_option("--tol-cross", a.tol.cross, "Agreement of the two curvature routes")->capture_default_str();
}

int exit_for(crg_status s) {
  if (s == CRG_INTERNAL) return kInternal;
  return crg_status_is_numerical(s) ? kNumerical : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cr-tool: pseudohermitian geometry of hypersurfaces in C^2 and CR spectra on S^3"};
  app.name("cr-tool");
  app.set_version_flag("--version", std::string(crg_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--out", g.out, "Write the report to this path (atomically)");
  app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  app.add_flag("--quiet", g.quiet, "Suppress the one-line summary");

  // webster
  std::string defining;
  SurfaceArgs web;
  auto* c_web = app.add_subcommand("webster", "Webster curvature of {u = 0} at sampled or given points");
  c_web->add_option("--defining", defining, "Defining polynomial u (JSON)")->required();
  add_sampling(c_web, web, true);

  // monge-ampere
  SurfaceArgs ma;
  auto* c_ma = app.add_subcommand("monge-ampere", "Defect -J(u) - 1 of the Fefferman equation");
  c_ma->add_option("--defining", defining, "Defining polynomial u (JSON)")->required();
  add_sampling(c_ma, ma, true);

  // ellipsoid
  double A1 = 1, B1 = 1, A2 = 1, B2 = 1;
  SurfaceArgs ell;
  auto* c_ell = app.add_subcommand("ellipsoid", "Closed-form curvature and positivity of A1x1^2+B1y1^2+A2x2^2+B2y2^2=1");
  c_ell->add_option("--A1", A1)->required();
  c_ell->add_option("--B1", B1)->required();
  c_ell->add_option("--A2", A2)->required();
  c_ell->add_option("--B2", B2)->required();
  add_sampling(c_ell, ell, false);

  // rossi
  double t = 0.0;
  int degree = 6;
  auto* c_rossi = app.add_subcommand("rossi", "Paneitz eigenvalue of the phi = 1 deformation");
  c_rossi->add_option("--t", t, "Deformation parameter, |t| < 1")->required();
  c_rossi->add_option("--degree", degree, "Basis degree cap N")->capture_default_str();

  // spectrum
  std::string phi_path, backend = "auto", op = "P4";
  int order = 8;
  auto* c_spec = app.add_subcommand("spectrum", "Spectrum of a CR operator under the deformation t phi");
  c_spec->add_option("--phi", phi_path, "Deformation function phi (JSON); default 0");
  c_spec->add_option("--t", t, "Deformation parameter, |t| < 1")->capture_default_str();
  c_spec->add_option("--degree", degree, "Basis degree cap N")->capture_default_str();
  c_spec->add_option("--backend", backend, "exact, series, or auto")
      ->check(CLI::IsMember({"auto", "exact", "series"}))
      ->capture_default_str();
  c_spec->add_option("--order", order, "Series order K")->capture_default_str();
  c_spec->add_option("--op", op, "P4, P4alt, boxb, boxbbar or Q")
      ->check(CLI::IsMember({"P4", "P4alt", "boxb", "boxbbar", "Q"}))
      ->capture_default_str();

  // be-check
  auto* c_be = app.add_subcommand("be-check", "Harmonic decomposition of phi and the embeddability condition");
  c_be->add_option("--phi", phi_path, "Deformation function phi (JSON)")->required();

  // probe
  std::vector<double> ts;
  auto* c_probe = app.add_subcommand("probe", "Lowest P4 eigenvalues along a list of t values");
  c_probe->add_option("--phi", phi_path, "Deformation function phi (JSON)")->required();
  c_probe->add_option("--t", ts, "t values (repeat or comma-separate)")->required()->delimiter(',');
  c_probe->add_option("--degree", degree, "Basis degree cap N")->capture_default_str();
  c_probe->add_option("--order", order, "Series order K")->capture_default_str();

  if (argc > 1 && argv[1][0] != '-') {
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == argv[1];
    if (!known) {
      std::cerr << "error: unknown command '" << argv[1] << "'\n\n" << app.help();
      return kValidation;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kValidation;
  }

  try {
    check_output_dir(g.out);
    auto surface = [&](const SurfaceArgs& a) {
      require_positive(a.samples, "--samples");
      require_readable(defining);
      require_readable(a.points);
    };

    std::string report;
    char* raw = nullptr;
    if (c_web->parsed() || c_ma->parsed()) {
      const SurfaceArgs& a = c_web->parsed() ? web : ma;
      surface(a);
      PolyHandle u;
      load_poly(u, defining, true);
      const std::string pts = a.points.empty() ? "" : read_file(a.points);
      const char* pts_c = a.points.empty() ? nullptr : pts.c_str();
      check(c_web->parsed() ? crg_webster_report(u.p, pts_c, a.samples, a.seed, &a.tol, &raw)
                            : crg_monge_ampere_report(u.p, pts_c, a.samples, a.seed, &a.tol, &raw));
    } else if (c_ell->parsed()) {
      require_positive(ell.samples, "--samples");
      check(crg_ellipsoid_report(A1, B1, A2, B2, ell.samples, ell.seed, &ell.tol, &raw));
    } else if (c_rossi->parsed()) {
      require_t(t);
      require_positive(degree, "--degree");
      check(crg_rossi_report(t, degree, &raw));
    } else if (c_spec->parsed()) {
      require_t(t);
      require_positive(degree, "--degree");
      require_positive(order, "--order");
      require_readable(phi_path);
      PolyHandle phi;
      if (!phi_path.empty()) load_poly(phi, phi_path, false);
      crg_spectrum_request r;
      crg_spectrum_request_default(&r);
      r.phi = phi.p;
      r.t = t;
      r.degree = degree;
      r.order = order;
      r.backend = backend == "exact" ? CRG_BACKEND_EXACT : backend == "series" ? CRG_BACKEND_SERIES : CRG_BACKEND_AUTO;
      check(crg_operator_from_name(op.c_str(), &r.op));
      check(crg_spectrum_report(&r, &raw));
    } else if (c_be->parsed()) {
      require_readable(phi_path);
      PolyHandle phi;
      load_poly(phi, phi_path, false);
      check(crg_be_report(phi.p, &raw));
    } else if (c_probe->parsed()) {
      for (double x : ts) require_t(x);
      require_positive(degree, "--degree");
      require_positive(order, "--order");
      require_readable(phi_path);
      PolyHandle phi;
      load_poly(phi, phi_path, false);
      check(crg_probe_report(phi.p, ts.data(), ts.size(), degree, order, &raw));
    }
    report = take(raw);
    emit(g, report);
    return kOk;
  } catch (const Usage& e) {
    std::cerr << "error: InvalidArgument: " << e.what() << "\n";
    return kValidation;
  } catch (const ApiFailure& f) {
    std::cerr << "error: " << f.message << "\n";
    return exit_for(f.status);
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return kInternal;
  }
}
