#pragma once

// JSON forms used by the CLI, its reports and golden files:
//   polynomial  {"lo": int, "coeffs": [[re, im], ...]}
//   space       {"freqs": [{"theta": [re, im], "tau": int}, ...]}
//   family      {"scheme": "a1"|"a2"|"a3"|"a4"|"exp_bspline", "v_init": real|null, "space": space}
//   report      ConditionReport with per-level, per-root residuals

#include <json.hpp>

#include "expsubdiv/analysis.hpp"
#include "expsubdiv/expspace.hpp"
#include "expsubdiv/laurent.hpp"
#include "expsubdiv/schemes.hpp"

namespace expsubdiv {

using json = nlohmann::json;

json complex_to_json(cplx c);
/// Accepts [re, im] or a bare real number.
cplx complex_from_json(const json& j);

void to_json(json& j, const LaurentPolynomial& p);
void from_json(const json& j, LaurentPolynomial& p);

void to_json(json& j, const ExponentialSpace& s);
void from_json(const json& j, ExponentialSpace& s);

void to_json(json& j, const ConditionReport& r);

json family_to_json(const SymbolFamily& f);
/// Builds a family from its descriptor. For a1..a4 a missing space is
/// derived from v_init; exp_bspline requires a space. Throws
/// std::invalid_argument on malformed descriptors.
SymbolFamily family_from_json(const json& j);

}  // namespace expsubdiv
