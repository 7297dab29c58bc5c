#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "crgeom/crgeom.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  crg_string_free(s);
  return out;
}

const char* kSphere =
    R"({"terms":[{"a1":1,"b1":1,"a2":0,"b2":0,"re":1,"im":0},{"a1":0,"b1":0,"a2":1,"b2":1,"re":1,"im":0},)"
    R"({"a1":0,"b1":0,"a2":0,"b2":0,"re":-1,"im":0}]})";
const char* kOne = R"({"terms":[{"a1":0,"b1":0,"a2":0,"b2":0,"re":1,"im":0}]})";

struct Handle {
  crg_poly* p = nullptr;
  ~Handle() { crg_poly_free(p); }
};

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("status names and numerical classification") {
  CHECK(std::string(crg_status_name(CRG_OK)) == "OK");
  CHECK(std::string(crg_status_name(CRG_NOT_HERMITIAN)) == "NotHermitian");
  CHECK(std::string(crg_status_name(CRG_DEGREE_CAP_EXCEEDED)) == "DegreeCapExceeded");
  CHECK(std::string(crg_status_name(CRG_INTERNAL)) == "Internal");
  CHECK(crg_status_is_numerical(CRG_NOT_STRICTLY_PSEUDOCONVEX));
  CHECK(crg_status_is_numerical(CRG_SERIES_ORDER_INSUFFICIENT));
  CHECK(crg_status_is_numerical(CRG_NOT_HERMITIAN));
  CHECK_FALSE(crg_status_is_numerical(CRG_INVALID_ARGUMENT));
  CHECK_FALSE(crg_status_is_numerical(CRG_PARSE));
  CHECK_FALSE(crg_status_is_numerical(CRG_OK));
  CHECK(std::string(crg_version()) == "0.1.0");
}

TEST_CASE("poly handle round trip and errors") {
  Handle h;
  REQUIRE(crg_poly_from_json(kSphere, 1, &h.p) == CRG_OK);
  double re = 0, im = 0;
  REQUIRE(crg_poly_eval(h.p, 0.6, 0.0, 0.0, 0.8, &re, &im) == CRG_OK);
  CHECK(std::abs(re) < 1e-15);
  CHECK(im == 0.0);
  char* text = nullptr;
  REQUIRE(crg_poly_to_json(h.p, &text) == CRG_OK);
  const json j = json::parse(take(text));
  CHECK(j.at("terms").size() == 3);

  crg_poly* bad = nullptr;
  CHECK(crg_poly_from_json("{not json", 0, &bad) == CRG_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(crg_last_error()).find("Parse") == 0);
  // z1 alone is not real-valued
  CHECK(crg_poly_from_json(R"({"terms":[{"a1":1,"b1":0,"a2":0,"b2":0,"re":1,"im":0}]})", 1, &bad) != CRG_OK);
  CHECK(crg_poly_from_json(nullptr, 0, &bad) == CRG_INVALID_ARGUMENT);
}

TEST_CASE("webster report through the C API") {
  Handle u;
  REQUIRE(crg_poly_from_json(kSphere, 1, &u.p) == CRG_OK);
  char* out = nullptr;
  REQUIRE(crg_webster_report(u.p, nullptr, 10, 3, nullptr, &out) == CRG_OK);
  const json r = json::parse(take(out));
  CHECK(r.at("meta").at("command") == "webster");
  CHECK(r.at("meta").at("seed") == 3);
  CHECK(r.at("points").size() == 10);
  CHECK(std::abs(r.at("summary").at("min_R").get<double>() - 2.0) < 1e-10);
  CHECK(std::abs(r.at("summary").at("max_R").get<double>() - 2.0) < 1e-10);
  for (const auto& p : r.at("points")) {
    CHECK(p.at("z1").size() == 2);
    CHECK(std::abs(p.at("ma_defect").get<double>()) < 1e-10);
  }

  // explicit points, both accepted shapes
  REQUIRE(crg_webster_report(u.p, R"([[0.6,0,0,0.8],{"z1":[0,1],"z2":[0,0]}])", 0, 0, nullptr, &out) == CRG_OK);
  CHECK(json::parse(take(out)).at("points").size() == 2);
  CHECK(crg_webster_report(u.p, R"([[2,0,0,0]])", 0, 0, nullptr, &out) == CRG_OFF_SURFACE);
  CHECK(crg_webster_report(u.p, R"([[1,2]])", 0, 0, nullptr, &out) == CRG_PARSE);
  CHECK(crg_webster_report(u.p, nullptr, 0, 0, nullptr, &out) == CRG_INVALID_ARGUMENT);

  crg_surface_tolerances tol;
  crg_surface_tolerances_default(&tol);
  CHECK(tol.cross == 1e-8);
  tol.levi = -1.0;
  CHECK(crg_webster_report(u.p, nullptr, 5, 0, &tol, &out) == CRG_INVALID_ARGUMENT);
}

TEST_CASE("plane has no Levi form") {
  Handle u;
  REQUIRE(crg_poly_from_json(R"({"terms":[{"a1":1,"b1":0,"a2":0,"b2":0,"re":0.5,"im":0},)"
                             R"({"a1":0,"b1":1,"a2":0,"b2":0,"re":0.5,"im":0}]})",
                             1, &u.p) == CRG_OK);
  char* out = nullptr;
  const crg_status s = crg_webster_report(u.p, nullptr, 5, 0, nullptr, &out);
  CHECK(s == CRG_NOT_STRICTLY_PSEUDOCONVEX);
  CHECK(crg_status_is_numerical(s));
  CHECK(out == nullptr);
}

TEST_CASE("ellipsoid and rossi reports") {
  char* out = nullptr;
  REQUIRE(crg_ellipsoid_report(2, 1, 1, 1, 20, 7, nullptr, &out) == CRG_OK);
  const json e = json::parse(take(out));
  CHECK(e.at("positive") == true);
  CHECK(e.at("exact_certificates")[0] == "17/8");
  CHECK(e.at("closed_vs_general_max_reldiff").get<double>() < 1e-10);
  CHECK(crg_ellipsoid_report(-1, 1, 1, 1, 20, 7, nullptr, &out) == CRG_INVALID_ARGUMENT);

  REQUIRE(crg_rossi_report(0.5, 6, &out) == CRG_OK);
  const json r = json::parse(take(out));
  CHECK(std::abs(r.at("lambda").get<double>() + 4.0 / 3.0) < 1e-8);
  CHECK(r.at("formula_lambda").get<double>() == doctest::Approx(-4.0 / 3.0));
  CHECK(crg_rossi_report(1.0, 6, &out) == CRG_INVALID_ARGUMENT);
  CHECK(crg_rossi_report(0.5, 0, &out) == CRG_INVALID_ARGUMENT);
}

TEST_CASE("spectrum handle") {
  crg_operator op;
  CHECK(crg_operator_from_name("P4alt", &op) == CRG_OK);
  CHECK(op == CRG_OP_P4_ALT);
  CHECK(crg_operator_from_name("P5", &op) == CRG_INVALID_ARGUMENT);

  crg_spectrum_request r;
  crg_spectrum_request_default(&r);
  r.degree = 4;
  r.op = CRG_OP_BOXB;
  crg_spectrum* s = nullptr;
  REQUIRE(crg_spectrum_compute(&r, &s) == CRG_OK);
  CHECK(crg_spectrum_size(s) > 0);
  CHECK(std::abs(crg_spectrum_eigenvalue(s, 0)) < 1e-10);
  CHECK(std::isnan(crg_spectrum_eigenvalue(s, crg_spectrum_size(s))));
  CHECK(crg_spectrum_kernel_dim(s) > 0);
  char* out = nullptr;
  REQUIRE(crg_spectrum_to_json(s, &out) == CRG_OK);
  CHECK(json::parse(take(out)).at("op") == "boxb");
  crg_spectrum_free(s);

  Handle one;
  REQUIRE(crg_poly_from_json(kOne, 0, &one.p) == CRG_OK);
  r.phi = one.p;
  r.t = 0.5;
  r.op = CRG_OP_P4;
  REQUIRE(crg_spectrum_report(&r, &out) == CRG_OK);
  const json j = json::parse(take(out));
  CHECK(j.at("backend") == "exact");
  CHECK(j.at("min_eigenvalue").get<double>() == doctest::Approx(-4.0 / 3.0).epsilon(1e-9));

  r.t = 1.5;
  CHECK(crg_spectrum_report(&r, &out) == CRG_INVALID_ARGUMENT);
  r.t = 0.5;
  r.degree = 40;
  CHECK(crg_spectrum_report(&r, &out) == CRG_DEGREE_CAP_EXCEEDED);
}

TEST_CASE("series order failure is numerical") {
  Handle phi;
  REQUIRE(crg_poly_from_json(R"({"terms":[{"a1":4,"b1":0,"a2":0,"b2":0,"re":1,"im":0}]})", 0, &phi.p) == CRG_OK);
  crg_spectrum_request r;
  crg_spectrum_request_default(&r);
  r.phi = phi.p;
  r.t = 0.05;
  r.degree = 4;
  r.order = 2;
  char* out = nullptr;
  const crg_status s = crg_spectrum_report(&r, &out);
  CHECK(s == CRG_SERIES_ORDER_INSUFFICIENT);
  CHECK(crg_status_is_numerical(s));
}

TEST_CASE("be and probe reports") {
  Handle phi;
  REQUIRE(crg_poly_from_json(R"({"terms":[{"a1":3,"b1":0,"a2":0,"b2":0,"re":1,"im":0}]})", 0, &phi.p) == CRG_OK);
  char* out = nullptr;
  REQUIRE(crg_be_report(phi.p, &out) == CRG_OK);
  const json b = json::parse(take(out));
  CHECK(b.at("pass") == false);
  REQUIRE(b.at("violations").size() == 1);
  CHECK(b.at("violations")[0].at("p") == 3);

  Handle one;
  REQUIRE(crg_poly_from_json(kOne, 0, &one.p) == CRG_OK);
  const double ts[] = {0.5};
  REQUIRE(crg_probe_report(one.p, ts, 1, 4, 6, &out) == CRG_OK);
  const json p = json::parse(take(out));
  CHECK(p.at("negative_found") == true);
  CHECK(p.at("verdict") == "non-embeddable (small t)");
  CHECK(crg_probe_report(one.p, ts, 0, 4, 6, &out) == CRG_INVALID_ARGUMENT);
}

TEST_CASE("reports are identical across thread counts") {
  char* a = nullptr;
  char* b = nullptr;
  crg_set_threads(1);
  REQUIRE(crg_ellipsoid_report(3, 0.5, 1.5, 2, 40, 11, nullptr, &a) == CRG_OK);
  crg_set_threads(4);
  REQUIRE(crg_ellipsoid_report(3, 0.5, 1.5, 2, 40, 11, nullptr, &b) == CRG_OK);
  crg_set_threads(0);
  CHECK(take(a) == take(b));
}

}
