#include "crgeom/poly_io.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "crgeom/error.hpp"

namespace crgeom {

namespace {

std::uint16_t read_exponent(const nlohmann::json& t, const char* name) {
  if (!t.contains(name)) return 0;
  const auto& v = t.at(name);
  if (!v.is_number_integer() && !v.is_number_unsigned())
    throw Error(ErrorCode::Parse, std::string("exponent '") + name + "' must be an integer");
  const auto n = v.get<long long>();
  if (n < 0 || n > std::numeric_limits<std::uint16_t>::max() / 4)
    throw Error(ErrorCode::Parse, std::string("exponent '") + name + "' out of range");
  return std::uint16_t(n);
}

double read_coef(const nlohmann::json& t, const char* name) {
  if (!t.contains(name)) return 0.0;
  const auto& v = t.at(name);
  if (!v.is_number()) throw Error(ErrorCode::Parse, std::string("'") + name + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw Error(ErrorCode::Parse, "coefficients must be finite");
  return x;
}

}  // namespace

Poly poly_from_json(const nlohmann::json& j, bool require_real) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
    throw Error(ErrorCode::Parse, "expected an object with a 'terms' array");
  std::vector<Term> terms;
  std::set<std::uint64_t> seen;
  for (const auto& t : j.at("terms")) {
    if (!t.is_object()) throw Error(ErrorCode::Parse, "each term must be an object");
    Exponents e{read_exponent(t, "a1"), read_exponent(t, "b1"), read_exponent(t, "a2"),
                read_exponent(t, "b2")};
    if (!seen.insert(e.key()).second)
      throw Error(ErrorCode::Parse, "duplicate exponent tuple (" + std::to_string(e.a1) + "," +
                                        std::to_string(e.b1) + "," + std::to_string(e.a2) + "," +
                                        std::to_string(e.b2) + ")");
    terms.push_back({e, Complex(read_coef(t, "re"), read_coef(t, "im"))});
  }
  Poly p = Poly::from_terms(std::move(terms));
  if (require_real && !p.is_real_valued(1e-12 * std::max(1.0, p.max_abs_coefficient())))
    throw Error(ErrorCode::InvalidArgument,
                "polynomial is not real-valued (coefficients lack conjugation symmetry)");
  return p;
}

Poly poly_from_json_text(std::string_view text, bool require_real) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
  return poly_from_json(j, require_real);
}

nlohmann::json poly_to_json(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.terms()) {
    terms.push_back({{"a1", t.exp.a1},
                     {"b1", t.exp.b1},
                     {"a2", t.exp.a2},
                     {"b2", t.exp.b2},
                     {"re", t.coef.real()},
                     {"im", t.coef.imag()}});
  }
  return {{"terms", terms}};
}

}  // namespace crgeom
