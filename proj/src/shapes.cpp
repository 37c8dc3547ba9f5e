#include "expsubdiv/shapes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace expsubdiv {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kPitch = 0.3;

// Sample counts for the closed conics follow from the v^(-1) values:
// cos(2 pi / 7) -> 7 points on the circle, 1/2 = cos(pi / 3) -> 6 on the ellipse.
const std::array<Shape, 8> kShapes{{
    {ShapeKind::circle, "circle", 2, Topology::closed, {0.0, 1.0}, 2.0 * pi / 7.0, 7},
    {ShapeKind::ellipse, "ellipse", 2, Topology::closed, {0.0, 1.0}, pi / 3.0, 6},
    {ShapeKind::parabola, "parabola", 2, Topology::open, {0.0, 0.0}, 0.5, 16},
    {ShapeKind::hyperbola, "hyperbola", 2, Topology::open, {1.0, 0.0}, 0.6, 16},
    {ShapeKind::archimedean_spiral, "archimedean_spiral", 2, Topology::open, {0.0, 1.0}, 2.0 * pi / 3.0, 16},
    {ShapeKind::circle_involute, "circle_involute", 2, Topology::open, {0.0, 1.0}, 2.0 * pi / 3.0, 16},
    {ShapeKind::helix, "helix", 3, Topology::open, {0.0, 1.0}, 4.0 * pi / 5.0, 16},
    {ShapeKind::conical_spiral, "conical_spiral", 3, Topology::open, {0.0, 1.0}, 4.0 * pi / 5.0, 16},
}};

double distance(const std::vector<double>& a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) s += (a[c] - b[c]) * (a[c] - b[c]);
  return std::sqrt(s);
}

}  // namespace

std::vector<double> Shape::eval(double u) const {
  const double c = std::cos(u);
  const double s = std::sin(u);
  switch (kind) {
    case ShapeKind::circle: return {c, s};
    case ShapeKind::ellipse: return {2.0 * c, s};
    case ShapeKind::parabola: return {u, u * u};
    case ShapeKind::hyperbola: return {std::cosh(u), std::sinh(u)};
    case ShapeKind::archimedean_spiral: return {u * c, u * s};
    case ShapeKind::circle_involute: return {c + u * s, s - u * c};
    case ShapeKind::helix: return {c, s, kPitch * u};
    case ShapeKind::conical_spiral: return {u * c, u * s, kPitch * u};
  }
  return {};
}

const Shape& shape(ShapeKind kind) { return kShapes[static_cast<std::size_t>(kind)]; }

std::optional<ShapeKind> parse_shape_name(std::string_view name) {
  for (const auto& s : kShapes)
    if (s.name == name) return s.kind;
  return std::nullopt;
}

std::vector<ShapeKind> all_shapes() {
  std::vector<ShapeKind> out;
  for (const auto& s : kShapes) out.push_back(s.kind);
  return out;
}

double default_v_init(const Shape& s, double spacing) {
  return std::cosh(s.frequency * spacing).real();
}

RefinedData sample_shape(const Shape& s, int samples, double spacing, double p) {
  if (samples < 1) throw std::invalid_argument("sample_shape: need at least one sample");
  if (!(spacing > 0.0)) throw std::invalid_argument("sample_shape: spacing must be positive");
  const long first = s.topology == Topology::closed ? 0 : -static_cast<long>(samples - 1) / 2;
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(samples * s.dim));
  for (long j = first; j < first + samples; ++j) {
    const auto pt = s.eval(spacing * (static_cast<double>(j) + p));
    coords.insert(coords.end(), pt.begin(), pt.end());
  }
  return {0, first, s.dim, std::move(coords), p, s.topology};
}

double reference_distance(const Shape& s, const RefinedData& data, double spacing) {
  if (data.dim() != s.dim) throw std::invalid_argument("reference_distance: dimension mismatch");
  double worst = 0.0;
  if (s.kind == ShapeKind::circle) {
    for (std::size_t m = 0; m < data.size(); ++m) {
      const auto pt = data.point(m);
      worst = std::max(worst, std::abs(std::hypot(pt[0], pt[1]) - 1.0));
    }
    return worst;
  }

  double u0 = 0.0;
  double u1 = 2.0 * pi;
  if (s.topology == Topology::open) {
    u0 = spacing * data.parameter(0) - 2.0 * spacing;
    u1 = spacing * data.parameter(data.size() - 1) + 2.0 * spacing;
  }
  const int grid = 4000;
  const double h = (u1 - u0) / grid;
  std::vector<std::vector<double>> samples;
  samples.reserve(grid + 1);
  for (int g = 0; g <= grid; ++g) samples.push_back(s.eval(u0 + h * g));

  for (std::size_t m = 0; m < data.size(); ++m) {
    const auto pt = data.point(m);
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int g = 0; g <= grid; ++g) {
      const double d = distance(samples[static_cast<std::size_t>(g)], pt);
      if (d < best_d) {
        best_d = d;
        best = g;
      }
    }
    // Golden-section search on the distance itself; it is V-shaped at an
    // exact hit, so the located minimum is resolved to rounding level.
    double a = u0 + h * std::max(best - 1, 0);
    double b = u0 + h * std::min(best + 1, grid);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = distance(s.eval(c), pt);
    double fd = distance(s.eval(d), pt);
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = distance(s.eval(c), pt);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = distance(s.eval(d), pt);
      }
    }
    worst = std::max(worst, std::min({best_d, fc, fd}));
  }
  return worst;
}

}  // namespace expsubdiv
