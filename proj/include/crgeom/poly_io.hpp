#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "crgeom/ring.hpp"

namespace crgeom {

/// Reads {"terms":[{"a1":..,"b1":..,"a2":..,"b2":..,"re":..,"im":..}, ...]}.
/// Duplicate exponent tuples are rejected; with require_real the polynomial
/// must satisfy the conjugation symmetry of a real-valued function.
Poly poly_from_json(const nlohmann::json& j, bool require_real = false);
Poly poly_from_json_text(std::string_view text, bool require_real = false);

nlohmann::json poly_to_json(const Poly& p);

}  // namespace crgeom
