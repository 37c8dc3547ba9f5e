#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "expsubdiv/expspace.hpp"
#include "expsubdiv/laurent.hpp"

namespace expsubdiv {

enum class SchemeKind {
  a1,           // primal, generates {1, x, e^{tx}, e^{-tx}}, reproduces {1, x}
  a2,           // primal, reproduces {1, x, e^{tx}, e^{-tx}}
  a3,           // dual, reproduces {1, x, e^{tx}, e^{-tx}}
  a4,           // dual, reproduces {1, x, e^{+-tx}, x e^{+-tx}}
  exp_bspline,  // exponential B-spline of an arbitrary space
  stationary,   // one fixed mask at every level
};

std::string_view scheme_name(SchemeKind kind);
/// Accepts "a1".."a4", "exp_bspline"; "stationary" is not constructible by name.
std::optional<SchemeKind> parse_scheme_name(std::string_view name);

/// v -> sqrt((1 + v) / 2). Throws std::domain_error for v <= -1.
double v_next(double v);

/// v^(k): k+1 applications of v_next to the initial value v^(-1).
double level_parameter(double v_init, int k);

/// The frequency t with cosh(t) = v_init: acosh(v) for v >= 1 (hyperbolic),
/// i acos(v) for -1 < v < 1 (trigonometric), and 0 for v = 1.
cplx frequency_from_v_init(double v_init);

/// Value of the a2 correction coefficient at v = 1, where the closed form is
/// 0/0. With s = sqrt(2(v+1)) the closed form equals
/// -(v^2 + 2v + 2) / (v s (2 + v s)), which at v = 1 gives -5/8. Matches the
/// 50-digit series evaluation of the unsimplified quotient around v = 1.
inline constexpr double kAlphaPolynomialLimit = -5.0 / 8.0;

/// a2 coefficient alpha for the level parameter v. Uses the cancellation-free
/// form away from v = 1 and `polynomial_limit` within 1e-8 of it.
double a2_alpha(double v, double polynomial_limit = kAlphaPolynomialLimit);

/// Level symbols as functions of the level parameter v = v^(k).
LaurentPolynomial a1_symbol(double v);
LaurentPolynomial a2_symbol(double v, double alpha_limit = kAlphaPolynomialLimit);
LaurentPolynomial a3_symbol(double v);
LaurentPolynomial a4_symbol(double v);

/// 2 prod_i ((e^{theta_i/2^{k+1}} z + 1) / (e^{theta_i/2^{k+1}} + 1))^{tau_i}, lo = 0.
/// Throws std::domain_error if some e^{theta_i/2^{k+1}} == -1.
LaurentPolynomial exp_bspline_symbol(const ExponentialSpace& space, int k);

/// Stationary symbol the non-stationary family tends to as k grows, placed
/// with the same lowest degree as the family's level symbols.
LaurentPolynomial stationary_limit_symbol(SchemeKind kind);
LaurentPolynomial stationary_limit_symbol(std::string_view name);

/// Generator of the level symbols a^(k)(z) of one scheme.
///
/// Families are immutable; symbol_at(k) is a pure function of the family
/// parameters and k. The family's space is the one it is built to generate
/// (and, for a2..a4, reproduce).
class SymbolFamily {
 public:
  /// Throws std::domain_error unless v_init > -1.
  static SymbolFamily nonstationary(SchemeKind kind, double v_init);
  static SymbolFamily a1(double v_init) { return nonstationary(SchemeKind::a1, v_init); }
  static SymbolFamily a2(double v_init) { return nonstationary(SchemeKind::a2, v_init); }
  static SymbolFamily a3(double v_init) { return nonstationary(SchemeKind::a3, v_init); }
  static SymbolFamily a4(double v_init) { return nonstationary(SchemeKind::a4, v_init); }
  static SymbolFamily exp_bspline(ExponentialSpace space);
  static SymbolFamily stationary(std::string name, LaurentPolynomial mask, ExponentialSpace space,
                                 std::optional<double> declared_p = std::nullopt);

  LaurentPolynomial symbol_at(int k) const;
  /// v^(k); throws std::logic_error for families without a level parameter.
  double v_at(int k) const;

  /// b^(k)(z) = z^n a^(k)(z); the declared parametrization moves to p + n.
  SymbolFamily shifted(int n) const;
  /// Replaces the a2 polynomial-limit constant. Exists for mutation testing.
  SymbolFamily with_alpha_limit(double alpha) const;

  const std::string& name() const { return name_; }
  SchemeKind kind() const { return kind_; }
  const ExponentialSpace& space() const { return space_; }
  std::optional<double> v_init() const { return v_init_; }
  std::optional<double> declared_p() const { return declared_p_; }
  int shift_amount() const { return shift_; }

 private:
  SymbolFamily() = default;

  std::string name_;
  SchemeKind kind_ = SchemeKind::stationary;
  ExponentialSpace space_;
  std::optional<double> v_init_;
  std::optional<double> declared_p_;
  LaurentPolynomial fixed_mask_;
  double alpha_limit_ = kAlphaPolynomialLimit;
  int shift_ = 0;
};

/// Space targeted by a1..a4 for a given v_init.
ExponentialSpace scheme_space(SchemeKind kind, double v_init);

}  // namespace expsubdiv
