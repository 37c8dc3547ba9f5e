#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "expsubdiv/shapes.hpp"
#include "expsubdiv/subdivision.hpp"

using namespace expsubdiv;

TEST_CASE("data validation") {
  CHECK_THROWS_AS(RefinedData(0, 0, 4, {1.0, 2.0, 3.0, 4.0}), std::invalid_argument);
  CHECK_THROWS_AS(RefinedData(0, 0, 2, {1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(RefinedData(0, 0, 1, {}), std::invalid_argument);
  const RefinedData d(2, -3, 2, {0, 1, 2, 3, 4, 5}, 0.5);
  CHECK(d.size() == 3);
  CHECK(d.index(0) == -3);
  CHECK(d.point(1)[1] == 3.0);
  CHECK(d.parameter(2) == (-1 + 0.5) / 4.0);
}

TEST_CASE("linear B-spline refinement of a delta is the hat function") {
  const LaurentPolynomial mask(-1, {0.5, 1.0, 0.5});
  std::vector<double> delta(11, 0.0);
  delta[5] = 1.0;
  RefinedData data = RefinedData::scalar(delta, -5);
  for (int k = 1; k <= 4; ++k) {
    data = refine_once(mask, data);
    CHECK(data.level() == k);
    for (std::size_t m = 0; m < data.size(); ++m) {
      const double x = static_cast<double>(data.index(m)) / std::pow(2.0, k);
      CHECK(data.point(m)[0] == doctest::Approx(std::max(0.0, 1.0 - std::abs(x))).epsilon(1e-15));
    }
  }
}

TEST_CASE("open boundary keeps only interior outputs") {
  const LaurentPolynomial mask(-4, {1, 2, 3, 4, 5, 4, 3, 2, 1});
  std::vector<double> f(10, 1.0);
  const auto out = refine_once(mask, RefinedData::scalar(f, 3));
  CHECK(out.size() == 2 * f.size() + 2 - mask.width());
  CHECK(out.index(0) == 2 * 3 + mask.hi() - 1);
  const std::vector<double> tiny(3, 1.0);
  CHECK_THROWS_AS(refine_once(mask, RefinedData::scalar(tiny)), std::domain_error);
}

TEST_CASE("closed boundary doubles the point count") {
  const LaurentPolynomial mask(-2, {0.25, 0.75, 0.75, 0.25});
  const std::vector<double> f{1.0, 2.0, 4.0};
  const auto out = refine_once(mask, RefinedData::scalar(f, 0, -0.5, Topology::closed));
  REQUIRE(out.size() == 6);
  // Chaikin on a closed polygon: each edge yields points at 1/4 and 3/4.
  const std::vector<double> expect{1.25, 1.75, 2.5, 3.5, 3.25, 1.75};
  for (std::size_t m = 0; m < out.size(); ++m) CHECK(out.point(m)[0] == doctest::Approx(expect[m]));
}

TEST_CASE("dual Chaikin refinement reproduces linear data at p = -1/2") {
  const LaurentPolynomial mask(-2, {0.25, 0.75, 0.75, 0.25});
  std::vector<double> f;
  for (int j = -6; j <= 6; ++j) f.push_back(3.0 * (j - 0.5) + 1.0);
  RefinedData data = RefinedData::scalar(f, -6, -0.5);
  for (int k = 0; k < 4; ++k) {
    data = refine_once(mask, data);
    for (std::size_t m = 0; m < data.size(); ++m) CHECK(data.point(m)[0] == doctest::Approx(3.0 * data.parameter(m) + 1.0));
  }
}

TEST_CASE("masks must be real and nonzero") {
  const RefinedData d = RefinedData::scalar(std::vector<double>(8, 1.0));
  CHECK_THROWS_AS(refine_once(LaurentPolynomial{}, d), std::domain_error);
  CHECK_THROWS_AS(refine_once(LaurentPolynomial(0, std::vector<cplx>{{1.0, 1.0}}), d), std::domain_error);
}

TEST_CASE("refine_levels uses the level-dependent symbols") {
  const auto family = SymbolFamily::a2(std::cos(2.0 * std::numbers::pi / 7.0));
  const Shape& circle = shape(ShapeKind::circle);
  const auto levels = refine_levels(family, sample_shape(circle, 7, circle.default_spacing, 0.0), 3);
  REQUIRE(levels.size() == 4);
  CHECK(levels[0].size() == 7);
  CHECK(levels[3].size() == 56);
  auto manual = levels[0];
  for (int k = 0; k < 3; ++k) manual = refine_once(family.symbol_at(k), manual);
  for (std::size_t i = 0; i < manual.coords().size(); ++i) CHECK(manual.coords()[i] == levels[3].coords()[i]);
}

TEST_CASE("piecewise-linear evaluation") {
  const RefinedData d(1, 0, 2, {0, 0, 2, 4, 4, 0});
  const auto mid = eval_piecewise_linear(d, 0.25);
  CHECK(mid[0] == doctest::Approx(1.0));
  CHECK(mid[1] == doctest::Approx(2.0));
  CHECK(eval_piecewise_linear(d, 1.0)[0] == doctest::Approx(4.0));
  CHECK_THROWS_AS(eval_piecewise_linear(d, 1.5), std::domain_error);
}

TEST_CASE("CSV output") {
  const std::vector<RefinedData> levels{RefinedData(0, -1, 2, {0.1, 0.2, 0.3, 0.4}, -0.5)};
  std::ostringstream os;
  write_csv(os, levels);
  CHECK(os.str() == "level,i,t,x,y\n0,-1,-1.5,0.10000000000000001,0.20000000000000001\n"
                    "0,0,-0.5,0.29999999999999999,0.40000000000000002\n");
}

TEST_CASE("shape sampling") {
  const Shape& helix = shape(ShapeKind::helix);
  const auto d = sample_shape(helix, 5, 0.5, -0.5);
  CHECK(d.dim() == 3);
  CHECK(d.offset() == -2);
  CHECK(d.point(0)[2] == doctest::Approx(0.3 * 0.5 * (-2.5)));
  CHECK(default_v_init(shape(ShapeKind::circle), 2.0 * std::numbers::pi / 7.0) ==
        doctest::Approx(std::cos(2.0 * std::numbers::pi / 7.0)));
  CHECK(default_v_init(shape(ShapeKind::parabola), 0.5) == 1.0);
  CHECK(parse_shape_name("circle_involute") == ShapeKind::circle_involute);
  CHECK(all_shapes().size() == 8);
  // Points on the curve are at distance zero; a displaced point is not.
  const auto on = sample_shape(shape(ShapeKind::hyperbola), 9, 0.6, 0.0);
  CHECK(reference_distance(shape(ShapeKind::hyperbola), on, 0.6) < 1e-12);
  const RefinedData off(0, 0, 2, {std::cosh(0.3) + 0.01, std::sinh(0.3)});
  const double dist = reference_distance(shape(ShapeKind::hyperbola), off, 0.6);
  CHECK(dist > 0.005);
  CHECK(dist <= 0.01);
}
