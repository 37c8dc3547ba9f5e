#include "expsubdiv/serialize.hpp"

#include <stdexcept>
#include <string>

namespace expsubdiv {

json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("expected a complex number as [re, im] or a real number, got " + j.dump());
}

void to_json(json& j, const LaurentPolynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(complex_to_json(c));
  j = json{{"lo", p.lo()}, {"coeffs", std::move(coeffs)}};
}

void from_json(const json& j, LaurentPolynomial& p) {
  if (!j.is_object() || !j.contains("lo") || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::invalid_argument("polynomial JSON needs \"lo\" and \"coeffs\"");
  std::vector<cplx> coeffs;
  for (const auto& c : j["coeffs"]) coeffs.push_back(complex_from_json(c));
  p = LaurentPolynomial(j["lo"].get<int>(), std::move(coeffs));
}

void to_json(json& j, const ExponentialSpace& s) {
  json freqs = json::array();
  for (const auto& f : s.freqs()) freqs.push_back({{"theta", complex_to_json(f.theta)}, {"tau", f.tau}});
  j = json{{"freqs", std::move(freqs)}};
}

void from_json(const json& j, ExponentialSpace& s) {
  if (!j.is_object() || !j.contains("freqs") || !j["freqs"].is_array())
    throw std::invalid_argument("space JSON needs a \"freqs\" array");
  std::vector<Frequency> freqs;
  for (const auto& f : j["freqs"]) {
    if (!f.contains("theta")) throw std::invalid_argument("space frequency needs \"theta\"");
    freqs.push_back({complex_from_json(f["theta"]), f.value("tau", 1)});
  }
  s = ExponentialSpace(std::move(freqs));
}

void to_json(json& j, const ConditionReport& r) {
  json levels = json::array();
  for (const auto& level : r.per_level) {
    json entries = json::array();
    for (const auto& e : level.entries) {
      entries.push_back({{"root", e.root},
                         {"order", e.order},
                         {"kind", to_string(e.kind)},
                         {"z", complex_to_json(e.z)},
                         {"value", complex_to_json(e.value)},
                         {"target", complex_to_json(e.target)},
                         {"residual", e.residual}});
    }
    levels.push_back({{"k", level.k}, {"scale", level.scale}, {"per_root", std::move(entries)}});
  }
  j = json{{"scheme", r.scheme},
           {"space", r.space},
           {"p", r.p ? json(*r.p) : json(nullptr)},
           {"per_level", std::move(levels)},
           {"verdict", to_string(r.verdict)},
           {"max_residual", r.max_residual},
           {"tolerance", r.tolerance}};
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
}

json family_to_json(const SymbolFamily& f) {
  return json{{"scheme", f.kind() == SchemeKind::stationary ? f.name() : std::string(scheme_name(f.kind()))},
              {"v_init", f.v_init() ? json(*f.v_init()) : json(nullptr)},
              {"space", f.space()}};
}

SymbolFamily family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("scheme") || !j["scheme"].is_string())
    throw std::invalid_argument("family descriptor needs a \"scheme\" string");
  const std::string name = j["scheme"].get<std::string>();
  const auto kind = parse_scheme_name(name);
  if (!kind) throw std::invalid_argument("unknown scheme \"" + name + "\"");
  if (*kind == SchemeKind::exp_bspline) {
    if (!j.contains("space") || j["space"].is_null())
      throw std::invalid_argument("exp_bspline needs a \"space\"");
    return SymbolFamily::exp_bspline(j["space"].get<ExponentialSpace>());
  }
  if (!j.contains("v_init") || !j["v_init"].is_number())
    throw std::invalid_argument("scheme " + name + " needs a numeric \"v_init\"");
  const double v = j["v_init"].get<double>();
  if (!(v > -1.0)) throw std::invalid_argument("v_init must be > -1");
  return SymbolFamily::nonstationary(*kind, v);
}

}  // namespace expsubdiv
