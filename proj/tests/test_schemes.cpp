#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "expsubdiv/schemes.hpp"

using namespace expsubdiv;

namespace {

void check_coeffs(const LaurentPolynomial& p, int lo, const std::vector<double>& expect, double tol) {
  REQUIRE(p.lo() == lo);
  REQUIRE(p.width() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(std::abs(p[lo + static_cast<int>(i)].real() - expect[i]) <= tol);
    CHECK(std::abs(p[lo + static_cast<int>(i)].imag()) <= tol);
  }
}

}  // namespace

TEST_CASE("half-angle recurrence") {
  CHECK(v_next(1.0) == 1.0);
  CHECK(std::abs(v_next(0.0) - std::sqrt(0.5)) < 1e-16);
  CHECK_THROWS_AS(v_next(-1.0), std::domain_error);
  for (double t : {0.3, 1.0, 2.5}) {
    for (int k = 0; k < 12; ++k) {
      const double scale = std::pow(2.0, k + 1);
      CHECK(std::abs(level_parameter(std::cos(t), k) - std::cos(t / scale)) < 1e-15);
      CHECK(std::abs(level_parameter(std::cosh(t), k) - std::cosh(t / scale)) < 1e-14);
    }
  }
}

TEST_CASE("frequency from the initial parameter") {
  CHECK(frequency_from_v_init(1.0) == cplx{0.0, 0.0});
  CHECK(std::abs(frequency_from_v_init(std::cosh(0.6)) - cplx{0.6, 0.0}) < 1e-12);
  CHECK(std::abs(frequency_from_v_init(-0.5) - cplx{0.0, 2.0 * std::numbers::pi / 3.0}) < 1e-15);
}

TEST_CASE("a2 alpha against a 50-digit reference") {
  // Original closed form evaluated in 50-digit arithmetic at v = sqrt(3)/2.
  const double reference = -0.72936947903276486954078715671745138484050348404796;
  const double v = std::sqrt(3.0) / 2.0;
  CHECK(std::abs(a2_alpha(v) - reference) < 4e-16);
  CHECK(a2_alpha(1.0) == kAlphaPolynomialLimit);
  CHECK(a2_alpha(1.0, -0.6) == -0.6);
  // Continuous through the removable singularity.
  CHECK(std::abs(a2_alpha(1.0 + 1e-7) - kAlphaPolynomialLimit) < 1e-6);
  CHECK(std::abs(a2_alpha(1.0 - 1e-7) - kAlphaPolynomialLimit) < 1e-6);
  CHECK_THROWS(a2_alpha(0.0));
}

TEST_CASE("alpha stays accurate near v = 1") {
  // Direct formula in long double, where the cancellation is still harmless this far from 1.
  for (double v : {0.999, 0.99999, 1.00001, 1.3}) {
    const long double lv = v;
    const long double s = std::sqrt(2.0L * (lv + 1.0L));
    const long double direct = (2.0L - lv * s) / (2.0L * lv * (lv - 1.0L) * s);
    CHECK(std::abs(a2_alpha(v) - static_cast<double>(direct)) < 1e-9);
  }
}

TEST_CASE("a1 at v = 1 is the quintic B-spline times a smoothing factor") {
  check_coeffs(a1_symbol(1.0), -3, {1.0 / 64, 10.0 / 64, 31.0 / 64, 44.0 / 64, 31.0 / 64, 10.0 / 64, 1.0 / 64}, 1e-15);
}

TEST_CASE("level symbols against extended-precision references") {
  const double v = std::sqrt(3.0) / 2.0;
  check_coeffs(a1_symbol(v), -3,
               {0.017037086855465857, 0.16348369626219209, 0.48296291314453414, 0.67303260747561581,
                0.48296291314453414, 0.16348369626219209, 0.017037086855465857},
               2e-15);
  check_coeffs(a2_symbol(v), -4,
               {-0.012426331164007098, -0.077350269189625765, 0.037278993492021294, 0.57735026918962576,
                0.95029467534397161, 0.57735026918962576, 0.037278993492021294, -0.077350269189625765,
                -0.012426331164007098},
               2e-15);
  check_coeffs(a3_symbol(v), -4,
               {-0.048858490722684508, -0.066496580927726033, 0.28122040051764298, 0.83413467113276756,
                0.83413467113276756, 0.28122040051764298, -0.066496580927726033, -0.048858490722684508},
               2e-15);
  check_coeffs(a4_symbol(0.3), -6,
               {0.3807557411306514, 0.39898982389082144, 0.04663677130263205, -0.011176326566045994,
                -0.1987374447816214, 0.3835314350235625, 0.3835314350235625, -0.1987374447816214,
                -0.011176326566045994, 0.04663677130263205, 0.39898982389082144, 0.3807557411306514},
               1e-14);
}

TEST_CASE("stationary limits") {
  check_coeffs(stationary_limit_symbol(SchemeKind::a1), -3,
               {1.0 / 64, 10.0 / 64, 31.0 / 64, 44.0 / 64, 31.0 / 64, 10.0 / 64, 1.0 / 64}, 1e-16);
  check_coeffs(stationary_limit_symbol(SchemeKind::a2), -4,
               {-5.0 / 512, -1.0 / 16, 5.0 / 128, 9.0 / 16, 241.0 / 256, 9.0 / 16, 5.0 / 128, -1.0 / 16, -5.0 / 512},
               1e-16);
  check_coeffs(stationary_limit_symbol("a3"), -4,
               {-5.0 / 128, -7.0 / 128, 35.0 / 128, 105.0 / 128, 105.0 / 128, 35.0 / 128, -7.0 / 128, -5.0 / 128},
               1e-16);
  check_coeffs(stationary_limit_symbol(SchemeKind::a4), -6,
               {63.0 / 8192, 77.0 / 8192, -495.0 / 8192, -693.0 / 8192, 1155.0 / 4096, 3465.0 / 4096,
                3465.0 / 4096, 1155.0 / 4096, -693.0 / 8192, -495.0 / 8192, 77.0 / 8192, 63.0 / 8192},
               1e-16);
  CHECK_THROWS_AS(stationary_limit_symbol(SchemeKind::exp_bspline), std::invalid_argument);
  CHECK_THROWS_AS(stationary_limit_symbol("b7"), std::invalid_argument);
}

TEST_CASE("level symbols sum to 2 and vanish at -1") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> vs(-0.95, 4.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double v = vs(rng);
    if (std::abs(v) < 1e-3) continue;
    for (const auto& a : {a1_symbol(v), a2_symbol(v), a3_symbol(v), a4_symbol(v)}) {
      CHECK(std::abs(eval(a, 1.0) - 2.0) < 1e-11);
      CHECK(std::abs(eval(a, -1.0)) < 1e-11);
      CHECK(a.is_real());
    }
  }
}

TEST_CASE("exponential B-spline symbols") {
  const auto linear = exp_bspline_symbol(ExponentialSpace({{0.0, 2}}), 3);
  check_coeffs(linear, 0, {0.5, 1.0, 0.5}, 1e-16);
  const auto space = mixed_exponential_space({0.0, 1.0}, 1);
  for (int k = 0; k < 6; ++k) {
    const auto b = exp_bspline_symbol(space, k);
    CHECK(b.width() == static_cast<std::size_t>(space.order() + 1));
    CHECK(std::abs(eval(b, 1.0) - 2.0) < 1e-14);
    CHECK(b.is_real());
    for (const auto& f : space.freqs()) CHECK(std::abs(eval(b, -level_root(f.theta, k))) < 1e-14);
  }
  // theta = i pi 2^{k+1} puts e^{theta/2^{k+1}} at -1.
  CHECK_THROWS_AS(exp_bspline_symbol(ExponentialSpace({{cplx{0.0, 2.0 * std::numbers::pi}, 1}}), 0),
                  std::domain_error);
}

TEST_CASE("symbol families") {
  const auto a2 = SymbolFamily::a2(0.5);
  CHECK(a2.kind() == SchemeKind::a2);
  CHECK(a2.declared_p() == 0.0);
  CHECK(*SymbolFamily::a3(0.5).declared_p() == -0.5);
  CHECK(a2.space().order() == 4);
  CHECK(SymbolFamily::a4(0.5).space().order() == 6);
  CHECK(std::abs(a2.v_at(0) - std::sqrt(0.75)) < 1e-15);
  CHECK(max_coeff_distance(a2.symbol_at(2), a2_symbol(level_parameter(0.5, 2))) == 0.0);

  const auto shifted = a2.shifted(3);
  CHECK(shifted.name() == "a2*z^3");
  CHECK(*shifted.declared_p() == 3.0);
  CHECK(shifted.symbol_at(1) == shift(a2.symbol_at(1), 3));

  const auto mutated = SymbolFamily::a2(1.0).with_alpha_limit(-0.6);
  CHECK(max_coeff_distance(mutated.symbol_at(0), SymbolFamily::a2(1.0).symbol_at(0)) > 1e-3);

  CHECK_THROWS(SymbolFamily::a1(-1.0));
  CHECK(parse_scheme_name("a3") == SchemeKind::a3);
  CHECK_FALSE(parse_scheme_name("a5").has_value());
  CHECK(scheme_name(SchemeKind::exp_bspline) == "exp_bspline");
}
