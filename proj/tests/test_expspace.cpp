#include <doctest.h>

#include <cmath>
#include <vector>

#include "expsubdiv/expspace.hpp"

using namespace expsubdiv;

TEST_CASE("space validation") {
  CHECK_THROWS_AS(ExponentialSpace({{0.0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(ExponentialSpace({{1.0, 1}, {1.0, 2}}), std::invalid_argument);
  const Frequency repeated[] = {{1.0, 1}, {0.0, 1}, {1.0, 2}};
  const auto merged = ExponentialSpace::merged(repeated);
  CHECK(merged.size() == 2);
  CHECK(merged[*merged.index_of(1.0)].tau == 3);
  CHECK(merged.order() == 4);
  CHECK(merged.contains(1.0, 2));
  CHECK_FALSE(merged.contains(1.0, 3));
  CHECK_FALSE(merged.index_of(2.0).has_value());
}

TEST_CASE("example spaces have the expected dimensions") {
  const cplx t{0.0, 1.0};
  for (int n = 0; n <= 3; ++n) CHECK(mixed_exponential_space(t, n).order() == n + 3);
  for (int n = 1; n <= 3; ++n) {
    CHECK(multi_frequency_space(t, n).order() == 2 * n + 2);
    CHECK(spiral_space(t, n).order() == 2 * n + 2);
  }
  // With t = 0 every frequency collapses onto zero.
  const auto poly = spiral_space(0.0, 2);
  CHECK(poly.size() == 1);
  CHECK(poly[0].tau == 6);
}

TEST_CASE("basis functions") {
  CHECK(basis_eval(0.0, 0, 0.0) == cplx{1.0, 0.0});
  CHECK(std::abs(basis_eval({0.0, 1.0}, 0, 1.0) - cplx{std::cos(1.0), std::sin(1.0)}) < 1e-15);
  CHECK(std::abs(basis_eval(2.0, 2, 1.5) - 2.25 * std::exp(3.0)) < 1e-12);
}

TEST_CASE("gamma polynomial vanishes to order tau at each frequency") {
  const auto space = spiral_space({0.0, 1.0}, 2);
  const auto g = gamma_polynomial(space);
  CHECK(g.hi() == space.order());
  CHECK(g[g.hi()] == cplx{1.0, 0.0});
  for (const auto& f : space.freqs()) {
    auto d = g;
    for (int r = 0; r < f.tau; ++r, d = derivative(d, 1)) CHECK(std::abs(eval(d, f.theta)) < 1e-12);
    CHECK(std::abs(eval(d, f.theta)) > 1e-3);
  }
}

TEST_CASE("the differential operator annihilates the basis") {
  const std::vector<double> xs{-1.5, -0.2, 0.0, 0.7, 2.0};
  for (const auto& space : {mixed_exponential_space(1.0, 2), spiral_space({0.0, 2.0}, 3),
                            multi_frequency_space({0.3, 0.0}, 2)}) {
    for (const auto& f : space.freqs())
      for (int r = 0; r < f.tau; ++r) CHECK(annihilation_residual(space, f.theta, r, xs) < 1e-10);
  }
  const auto space = mixed_exponential_space(1.0, 1);
  CHECK_THROWS_AS(annihilation_residual(space, 1.0, 1, xs), std::domain_error);
  CHECK_THROWS_AS(annihilation_residual(space, 3.0, 0, xs), std::domain_error);
}

TEST_CASE("level roots halve the frequency each level") {
  const cplx theta{0.4, 1.1};
  for (int k = 0; k < 10; ++k) {
    CHECK(std::abs(level_root(theta, k) - std::exp(-theta / std::pow(2.0, k + 1))) < 1e-15);
    const cplx next = level_root(theta, k + 1);
    CHECK(std::abs(next * next - level_root(theta, k)) < 1e-15);
  }
  const auto roots = level_roots(spiral_space(1.0, 2), 3);
  CHECK(roots.k == 3);
  REQUIRE(roots.roots.size() == 3);
  CHECK(roots.roots[0].z == cplx{1.0, 0.0});
  CHECK(roots.roots[1].tau == 2);
  CHECK(std::abs(roots.roots[1].z * roots.roots[2].z - 1.0) < 1e-15);
}
