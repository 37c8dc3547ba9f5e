#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "expsubdiv/analysis.hpp"

using namespace expsubdiv;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_CASE("a1 generates its space but reproduces only linears") {
  const auto a1 = SymbolFamily::a1(std::cosh(1.0));
  CHECK(check_generation(a1, a1.space(), 8).verdict == Verdict::generates);
  const auto rep = check_reproduction(a1, a1.space(), 0.0, 0);
  CHECK(rep.verdict == Verdict::fails);
  CHECK(rep.max_relative_residual(0) < 1e-12);
  CHECK(rep.max_relative_residual(1, ConditionKind::at_root) > 1e-3);
  CHECK(rep.max_relative_residual(2, ConditionKind::at_root) > 1e-3);
  CHECK(rep.max_relative_residual(1, ConditionKind::at_negated_root) < 1e-12);
}

TEST_CASE("reproducing schemes pass at their declared p for random parameters") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> vs(-0.9, 3.0);
  for (int trial = 0; trial < 15; ++trial) {
    const double v = vs(rng);
    if (std::abs(v) < 0.05) continue;
    for (const auto& family : {SymbolFamily::a2(v), SymbolFamily::a3(v)}) {
      const auto rep = check_reproduction(family, family.space(), *family.declared_p(), 8);
      CHECK_MESSAGE(rep.verdict == Verdict::reproduces, family.name(), " v_init ", v, " residual ", rep.max_residual);
    }
    const auto a4 = SymbolFamily::a4(v);
    CHECK(check_reproduction(a4, a4.space(), -0.5, 8, 1e-8).verdict == Verdict::reproduces);
  }
}

TEST_CASE("wrong p fails reproduction") {
  const auto a3 = SymbolFamily::a3(0.5);
  CHECK_FALSE(check_reproduction(a3, a3.space(), 0.0, 4).passed());
  CHECK(check_reproduction(a3, a3.space(), -0.5, 4).passed());
}

TEST_CASE("report entries carry targets and residuals") {
  const auto a2 = SymbolFamily::a2(0.5);
  const auto rep = check_reproduction(a2, a2.space(), 0.0, 2);
  REQUIRE(rep.per_level.size() == 3);
  for (const auto& level : rep.per_level) {
    CHECK(level.scale == doctest::Approx(a2.symbol_at(level.k).max_abs_coeff()));
    for (const auto& e : level.entries) {
      if (e.kind == ConditionKind::at_negated_root) CHECK(e.target == cplx{0.0, 0.0});
      if (e.kind == ConditionKind::at_root && e.order == 0) CHECK(std::abs(e.target - 2.0) < 1e-15);
      CHECK(e.residual == doctest::Approx(std::abs(e.value - e.target)));
    }
  }
}

TEST_CASE("parametrization solver") {
  CHECK(std::abs(*solve_parametrization(SymbolFamily::a2(0.5), SymbolFamily::a2(0.5).space(), 8).p) < 1e-12);
  const auto a4 = SymbolFamily::a4(std::cosh(0.6));
  CHECK(std::abs(*solve_parametrization(a4, a4.space(), 8).p + 0.5) < 1e-12);
  const auto a1 = SymbolFamily::a1(0.5);
  const auto full = solve_parametrization(a1, a1.space(), 8);
  CHECK_FALSE(full.p.has_value());
  CHECK_FALSE(full.diagnostic.empty());
  CHECK(std::abs(*solve_parametrization(a1, ExponentialSpace({{0.0, 2}}), 8).p) < 1e-12);
  const auto constants = solve_parametrization(a1, ExponentialSpace({{0.0, 1}}), 8);
  CHECK_FALSE(constants.p.has_value());
}

TEST_CASE("exponential B-splines generate but opposite roots are flagged") {
  const auto space = mixed_exponential_space(1.0, 2);
  CHECK(check_generation(SymbolFamily::exp_bspline(space), space, 8).passed());
  // (z^2 - 1) has the opposite pair 1, -1, so it cannot satisfy a(1) = 2, a(-1) = 0 consistently.
  const auto pair_mask = LaurentPolynomial(-1, {-1.0, 0.0, 1.0}) * LaurentPolynomial(0, {1.0, 1.0});
  const auto family = SymbolFamily::stationary("pair", pair_mask, ExponentialSpace({{0.0, 1}}));
  const auto rep = check_generation(family, family.space(), 0);
  bool flagged = false;
  for (const auto& e : rep.per_level.front().entries) flagged |= e.kind == ConditionKind::opposite_pair;
  CHECK(flagged);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("frequencies beyond the principal branch are rejected") {
  const ExponentialSpace space({{0.0, 1}, {cplx{0.0, 2.5 * pi}, 1}});
  const auto rep = check_reproduction(SymbolFamily::exp_bspline(ExponentialSpace({{0.0, 2}})), space, 0.0, 0);
  CHECK_FALSE(rep.passed());
  CHECK_FALSE(rep.diagnostic.empty());
}

TEST_CASE("symmetry classification") {
  CHECK(classify_symmetry(SymbolFamily::a2(0.5).symbol_at(0)) == Symmetry::odd_symmetric);
  CHECK(classify_symmetry(SymbolFamily::a3(0.5).symbol_at(0)) == Symmetry::even_symmetric);
  CHECK(classify_symmetry(SymbolFamily::a4(0.5).symbol_at(3)) == Symmetry::even_symmetric);
  CHECK(classify_symmetry(LaurentPolynomial(0, {1.0, 2.0, 4.0})) == Symmetry::none);
}

TEST_CASE("interpolatory masks") {
  const LaurentPolynomial four_point(-3, {-1.0 / 16, 0.0, 9.0 / 16, 1.0, 9.0 / 16, 0.0, -1.0 / 16});
  CHECK(is_interpolatory(four_point));
  CHECK_FALSE(is_interpolatory(SymbolFamily::a2(0.5).symbol_at(0)));
  const auto family = SymbolFamily::stationary("four_point", four_point, ExponentialSpace({{0.0, 4}}));
  CHECK(std::abs(*solve_parametrization(family, family.space(), 0).p) < 1e-12);
  CHECK(check_reproduction(family, family.space(), 0.0, 0).passed());
}

TEST_CASE("moment identities on the sub-masks") {
  const auto a2 = SymbolFamily::a2(std::cos(2.0 * pi / 7.0));
  for (int k = 0; k <= 5; ++k) {
    const auto mask = a2.symbol_at(k);
    for (const auto& root : level_roots(a2.space(), k).roots)
      CHECK(verify_moment_identities(mask, root.z, root.tau, 0.0) < 1e-12);
  }
  // The non-reproducing a1 violates them at the exponential roots.
  const auto a1 = SymbolFamily::a1(std::cos(1.0));
  CHECK(verify_moment_identities(a1.symbol_at(0), level_roots(a1.space(), 0).roots[1].z, 1, 0.0) > 1e-4);
}

TEST_CASE("step-wise reproduction mirrors the algebraic verdict") {
  const auto a2 = SymbolFamily::a2(std::cos(1.0));
  CHECK(stepwise_reproduction_test(a2, a2.space(), 0.0, 1, 0, 5, 12) < 1e-12);
  const auto a1 = SymbolFamily::a1(std::cos(1.0));
  CHECK(stepwise_reproduction_test(a1, a1.space(), 0.0, 1, 0, 5, 12) > 1e-4);
  CHECK(stepwise_reproduction_test(a1, a1.space(), 0.0, 0, 1, 5, 12) < 1e-12);
}

TEST_CASE("shift property") {
  const auto a3 = SymbolFamily::a3(std::cosh(0.6));
  for (int n : {-2, -1, 1, 2, 3}) CHECK(verify_shift_property(a3, a3.space(), -0.5, n, 6));
}

TEST_CASE("opposite-root audit") {
  const auto pairs = audit_opposite_roots(LaurentPolynomial(0, {-4.0, 0.0, 1.0}) * LaurentPolynomial(0, {3.0, 1.0}));
  CHECK(pairs.roots.size() == 3);
  CHECK(pairs.opposite_pairs.size() == 1);
  for (const auto& family : {SymbolFamily::a1(0.5), SymbolFamily::a2(0.5), SymbolFamily::a3(0.5)})
    CHECK(audit_opposite_roots(family.symbol_at(0)).opposite_pairs.empty());
}
