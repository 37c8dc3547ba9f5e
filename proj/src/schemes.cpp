#include "expsubdiv/schemes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace expsubdiv {

namespace {

LaurentPolynomial real_poly(int lo, std::initializer_list<double> c) { return LaurentPolynomial(lo, c); }

// (z + 1)^n / 2^m
LaurentPolynomial binomial_factor(int n, int m) {
  return power(real_poly(0, {1.0, 1.0}), n) * cplx{std::ldexp(1.0, -m), 0.0};
}

// (z^2 + 2 v z + 1) / (2 (v + 1))
LaurentPolynomial exponential_pair_factor(double v) {
  return real_poly(0, {1.0, 2.0 * v, 1.0}) * cplx{1.0 / (2.0 * (v + 1.0)), 0.0};
}

void require_level_parameter(double v) {
  if (!(v > -1.0)) throw std::domain_error("level parameter must satisfy v > -1");
}

}  // namespace

std::string_view scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::a1: return "a1";
    case SchemeKind::a2: return "a2";
    case SchemeKind::a3: return "a3";
    case SchemeKind::a4: return "a4";
    case SchemeKind::exp_bspline: return "exp_bspline";
    case SchemeKind::stationary: return "stationary";
  }
  return "unknown";
}

std::optional<SchemeKind> parse_scheme_name(std::string_view name) {
  if (name == "a1") return SchemeKind::a1;
  if (name == "a2") return SchemeKind::a2;
  if (name == "a3") return SchemeKind::a3;
  if (name == "a4") return SchemeKind::a4;
  if (name == "exp_bspline") return SchemeKind::exp_bspline;
  return std::nullopt;
}

double v_next(double v) {
  if (!(v > -1.0)) throw std::domain_error("v_next: requires v > -1");
  return std::sqrt((1.0 + v) / 2.0);
}

double level_parameter(double v_init, int k) {
  if (k < 0) throw std::invalid_argument("level_parameter: negative level");
  double v = v_init;
  for (int i = 0; i <= k; ++i) v = v_next(v);
  return v;
}

cplx frequency_from_v_init(double v_init) {
  if (!(v_init > -1.0)) throw std::domain_error("frequency_from_v_init: requires v_init > -1");
  if (v_init == 1.0) return {0.0, 0.0};
  if (v_init > 1.0) return {std::acosh(v_init), 0.0};
  return {0.0, std::acos(v_init)};
}

double a2_alpha(double v, double polynomial_limit) {
  require_level_parameter(v);
  if (v == 0.0) throw std::domain_error("a2_alpha: pole at v = 0");
  if (std::abs(v - 1.0) < 1e-8) return polynomial_limit;
  // (2 - v s) / (2 v (v - 1) s) with the common factor (v - 1) cancelled.
  const double s = std::sqrt(2.0 * (v + 1.0));
  return -(v * v + 2.0 * v + 2.0) / (v * s * (2.0 + v * s));
}

LaurentPolynomial a1_symbol(double v) {
  require_level_parameter(v);
  const double s = std::sqrt(2.0 * (v + 1.0));
  const double outer = 2.0 + s;
  const double middle = 2.0 * (2.0 * (v + 2.0) + 3.0 * s);
  const double den = 4.0 * (v + 3.0 + 2.0 * s);
  const auto last = real_poly(0, {outer / den, middle / den, outer / den});
  return shift(binomial_factor(2, 1) * exponential_pair_factor(v) * last, -3);
}

LaurentPolynomial a2_symbol(double v, double alpha_limit) {
  const double alpha = a2_alpha(v, alpha_limit);
  return a1_symbol(v) * real_poly(-1, {alpha, 1.0 - 2.0 * alpha, alpha});
}

LaurentPolynomial a3_symbol(double v) {
  require_level_parameter(v);
  if (v == 0.0) throw std::domain_error("a3_symbol: pole at v = 0");
  const double w = std::sqrt((v + 1.0) / 2.0);
  const double outer = -(v + 2.0 * (w + 1.0));
  const double middle = 2.0 * ((v + 1.0) * (v + 1.0) + 2.0 * (v + 1.0) * w + 1.0);
  const double den = 4.0 * v * w * (w + 1.0);
  const auto last = real_poly(0, {outer / den, middle / den, outer / den});
  return shift(binomial_factor(3, 2) * exponential_pair_factor(v) * last, -4);
}

LaurentPolynomial a4_symbol(double v) {
  require_level_parameter(v);
  if (v == 0.0) throw std::domain_error("a4_symbol: pole at v = 0");
  const double w = std::sqrt((v + 1.0) / 2.0);
  const double v2 = v * v;
  const double v3 = v2 * v;
  const double beta = 4.0 * (v2 + 5.0 * v + 2.0) * w + 8.0 * v2 + 17.0 * v + 6.0;
  const double delta =
      -4.0 * w * (2.0 * (2.0 * v3 + 10.0 * v2 + 9.0 * v + 2.0) + w * (16.0 * v2 + 23.0 * v + 6.0));
  const double epsilon = 8.0 * (v + 1.0) * w * (2.0 * v3 + 8.0 * v2 + 11.0 * v + 2.0) +
                         2.0 * (16.0 * v3 * v + 48.0 * v3 + 70.0 * v2 + 41.0 * v + 6.0);
  const double den = 64.0 * v3 * (v + 1.0) * (v + 1.0 + 0.5 * (v + 3.0) * w);
  const auto quartic = real_poly(0, {beta / den, delta / den, epsilon / den, delta / den, beta / den});
  const auto pair = real_poly(0, {1.0, 2.0 * v, 1.0});
  const auto squared_pair = pair * pair * cplx{1.0 / (2.0 * (v + 1.0)), 0.0};
  return shift(binomial_factor(3, 2) * squared_pair * quartic, -6);
}

LaurentPolynomial exp_bspline_symbol(const ExponentialSpace& space, int k) {
  if (k < 0) throw std::invalid_argument("exp_bspline_symbol: negative level");
  LaurentPolynomial b = LaurentPolynomial::constant(2.0);
  const double scale = std::ldexp(1.0, k + 1);
  for (const auto& f : space.freqs()) {
    const cplx e = std::exp(f.theta / scale);
    const cplx den = e + 1.0;
    if (std::abs(den) < 1e-12)
      throw std::domain_error("exp_bspline_symbol: e^{theta/2^{k+1}} = -1 makes the symbol singular");
    const LaurentPolynomial factor{0, std::vector<cplx>{1.0 / den, e / den}};
    b = mul(b, power(factor, f.tau));
  }
  return b;
}

LaurentPolynomial stationary_limit_symbol(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::a1:
      return shift(binomial_factor(4, 3) * real_poly(0, {1.0 / 8, 3.0 / 4, 1.0 / 8}), -3);
    case SchemeKind::a2:
      return shift(binomial_factor(4, 3) *
                       real_poly(0, {-5.0 / 64, -3.0 / 16, 49.0 / 32, -3.0 / 16, -5.0 / 64}),
                   -4);
    case SchemeKind::a3:
      return shift(binomial_factor(5, 4) * real_poly(0, {-5.0 / 8, 9.0 / 4, -5.0 / 8}), -4);
    case SchemeKind::a4:
      return shift(binomial_factor(7, 6) *
                       real_poly(0, {63.0 / 128, -91.0 / 32, 365.0 / 64, -91.0 / 32, 63.0 / 128}),
                   -6);
    default:
      throw std::invalid_argument("stationary_limit_symbol: no stationary limit for scheme " +
                                  std::string(scheme_name(kind)));
  }
}

LaurentPolynomial stationary_limit_symbol(std::string_view name) {
  const auto kind = parse_scheme_name(name);
  if (!kind) throw std::invalid_argument("stationary_limit_symbol: unknown scheme " + std::string(name));
  return stationary_limit_symbol(*kind);
}

ExponentialSpace scheme_space(SchemeKind kind, double v_init) {
  const cplx t = frequency_from_v_init(v_init);
  switch (kind) {
    case SchemeKind::a1:
    case SchemeKind::a2:
    case SchemeKind::a3:
      return mixed_exponential_space(t, 1);
    case SchemeKind::a4:
      return spiral_space(t, 2);
    default:
      throw std::invalid_argument("scheme_space: scheme has no level parameter");
  }
}

SymbolFamily SymbolFamily::nonstationary(SchemeKind kind, double v_init) {
  if (!(v_init > -1.0)) throw std::domain_error("SymbolFamily: v_init must be > -1");
  SymbolFamily f;
  f.kind_ = kind;
  f.name_ = std::string(scheme_name(kind));
  f.space_ = scheme_space(kind, v_init);
  f.v_init_ = v_init;
  f.declared_p_ = (kind == SchemeKind::a3 || kind == SchemeKind::a4) ? -0.5 : 0.0;
  return f;
}

SymbolFamily SymbolFamily::exp_bspline(ExponentialSpace space) {
  SymbolFamily f;
  f.kind_ = SchemeKind::exp_bspline;
  f.name_ = "exp_bspline";
  f.space_ = std::move(space);
  return f;
}

SymbolFamily SymbolFamily::stationary(std::string name, LaurentPolynomial mask, ExponentialSpace space,
                                      std::optional<double> declared_p) {
  if (mask.is_zero()) throw std::invalid_argument("SymbolFamily::stationary: zero mask");
  SymbolFamily f;
  f.kind_ = SchemeKind::stationary;
  f.name_ = std::move(name);
  f.fixed_mask_ = std::move(mask);
  f.space_ = std::move(space);
  f.declared_p_ = declared_p;
  return f;
}

double SymbolFamily::v_at(int k) const {
  if (!v_init_) throw std::logic_error("SymbolFamily::v_at: family " + name_ + " has no level parameter");
  return level_parameter(*v_init_, k);
}

LaurentPolynomial SymbolFamily::symbol_at(int k) const {
  if (k < 0) throw std::invalid_argument("symbol_at: negative level");
  LaurentPolynomial s;
  switch (kind_) {
    case SchemeKind::a1: s = a1_symbol(v_at(k)); break;
    case SchemeKind::a2: s = a2_symbol(v_at(k), alpha_limit_); break;
    case SchemeKind::a3: s = a3_symbol(v_at(k)); break;
    case SchemeKind::a4: s = a4_symbol(v_at(k)); break;
    case SchemeKind::exp_bspline: s = exp_bspline_symbol(space_, k); break;
    case SchemeKind::stationary: s = fixed_mask_; break;
  }
  return shift_ == 0 ? s : shift(s, shift_);
}

SymbolFamily SymbolFamily::shifted(int n) const {
  SymbolFamily f = *this;
  f.shift_ += n;
  if (f.declared_p_) *f.declared_p_ += n;
  if (n != 0) f.name_ = name_ + (n > 0 ? "*z^" : "*z^(") + std::to_string(n) + (n > 0 ? "" : ")");
  return f;
}

SymbolFamily SymbolFamily::with_alpha_limit(double alpha) const {
  SymbolFamily f = *this;
  f.alpha_limit_ = alpha;
  return f;
}

}  // namespace expsubdiv
