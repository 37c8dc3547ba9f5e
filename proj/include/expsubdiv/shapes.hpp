#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "expsubdiv/subdivision.hpp"

namespace expsubdiv {

enum class ShapeKind {
  circle,
  ellipse,
  parabola,
  hyperbola,
  archimedean_spiral,
  circle_involute,
  helix,
  conical_spiral,
};

/// A test curve whose coordinates lie in an exponential-polynomial space.
/// `frequency` is the t in e^{+-t u} (i for trigonometric curves, 1 for the
/// hyperbola, 0 for the parabola) per unit of curve parameter.
struct Shape {
  ShapeKind kind;
  std::string_view name;
  int dim;
  Topology topology;
  cplx frequency;
  double default_spacing;
  int default_samples;

  std::vector<double> eval(double u) const;
};

const Shape& shape(ShapeKind kind);
std::optional<ShapeKind> parse_shape_name(std::string_view name);
std::vector<ShapeKind> all_shapes();

/// v^(-1) = (e^{t sigma} + e^{-t sigma}) / 2 for the shape's frequency t.
double default_v_init(const Shape& s, double spacing);

/// Samples the curve at u = spacing * (j + p). Closed shapes start at j = 0;
/// open shapes are centred on u = 0.
RefinedData sample_shape(const Shape& s, int samples, double spacing, double p);

/// Largest distance from a refined point to the curve: radial deviation for
/// the unit circle, otherwise nearest-point distance by dense parameter
/// search followed by golden-section refinement.
double reference_distance(const Shape& s, const RefinedData& data, double spacing);

}  // namespace expsubdiv
