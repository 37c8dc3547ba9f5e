#include "expsubdiv/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "expsubdiv/analysis.hpp"
#include "expsubdiv/shapes.hpp"
#include "expsubdiv/subdivision.hpp"

namespace expsubdiv {

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (passed) detail << "failed: ";
      else detail << "; ";
      detail << what;
      passed = false;
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

CriterionResult run_timed(std::string id, std::string title, double time_limit,
                          const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (time_limit > 0.0) out.require(seconds < time_limit, "runtime " + fmt(seconds) + " s over " + fmt(time_limit) + " s");
  std::string detail = out.detail.str();
  return {std::move(id), std::move(title), out.passed, detail.empty() ? "ok" : detail, seconds};
}

SymbolFamily make_family(SchemeKind kind, double v_init, const SelftestOptions& o) {
  return SymbolFamily::nonstationary(kind, v_init).with_alpha_limit(o.alpha_limit);
}

const double kVInits[] = {-0.5, 0.5, 1.0, std::cosh(0.6), std::cos(2.0 * pi / 7.0)};
const double kReproductionVInits[] = {0.5, std::cos(2.0 * pi / 7.0), std::cosh(0.6)};
const SchemeKind kSchemes[] = {SchemeKind::a1, SchemeKind::a2, SchemeKind::a3, SchemeKind::a4};

// Classical four-point interpolatory mask.
LaurentPolynomial four_point_mask() {
  return LaurentPolynomial(-3, {-1.0 / 16, 0.0, 9.0 / 16, 1.0, 9.0 / 16, 0.0, -1.0 / 16});
}

double shape_deviation(const SymbolFamily& family, ShapeKind kind, int levels, double p) {
  const Shape& s = shape(kind);
  const RefinedData data = sample_shape(s, s.default_samples, s.default_spacing, p);
  const auto refined = refine_levels(family, data, levels);
  return reference_distance(s, refined.back(), s.default_spacing);
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const SelftestOptions& o) {
  std::vector<CriterionResult> results;
  const int kmax = o.k_max;

  results.push_back(run_timed("AC1", "exponential B-splines generate their spaces", 1.0, [&](Outcome& out) {
    const cplx ts[] = {{1.0, 0.0}, {0.0, 1.0}};
    for (cplx t : ts) {
      for (int n = 0; n <= 3; ++n) {
        std::vector<std::pair<std::string, ExponentialSpace>> spaces{{"mixed", mixed_exponential_space(t, n)}};
        if (n >= 1) {
          spaces.emplace_back("multi", multi_frequency_space(t, n));
          spaces.emplace_back("spiral", spiral_space(t, n));
        }
        for (const auto& [label, space] : spaces) {
          const auto report = check_generation(SymbolFamily::exp_bspline(space), space, kmax, 1e-9);
          out.require(report.verdict == Verdict::generates,
                      label + " n=" + std::to_string(n) + " residual " + fmt(report.max_residual));
        }
      }
    }
  }));

  results.push_back(run_timed("AC2", "a1 generates but reproduces only {1, x}", 1.0, [&](Outcome& out) {
    const auto family = make_family(SchemeKind::a1, std::cosh(1.0), o);
    const auto& space = family.space();
    out.require(check_generation(family, space, kmax, 1e-9).verdict == Verdict::generates, "generation");
    const auto rep = check_reproduction(family, space, 0.0, 0, 1e-9);
    out.require(rep.verdict == Verdict::fails, "reproduction unexpectedly passes");
    for (std::size_t l : {std::size_t{1}, std::size_t{2}}) {
      double worst = 0.0;
      for (const auto& e : rep.per_level.front().entries)
        if (e.root == l && e.kind == ConditionKind::at_root) worst = std::max(worst, e.residual);
      out.require(worst > 1e-3, "root " + std::to_string(l + 1) + " residual " + fmt(worst) + " <= 1e-3");
    }
    out.require(rep.max_relative_residual(0) < 1e-9, "constants/linears should pass");
  }));

  results.push_back(run_timed("AC3", "a2 reproduces {1, x, e^tx, e^-tx} at p = 0", 0.0, [&](Outcome& out) {
    for (double v : kReproductionVInits) {
      const auto family = make_family(SchemeKind::a2, v, o);
      const auto rep = check_reproduction(family, family.space(), 0.0, kmax, 1e-9);
      out.require(rep.verdict == Verdict::reproduces, "v_init " + fmt(v) + " residual " + fmt(rep.max_residual));
      const auto solved = solve_parametrization(family, family.space(), kmax, 1e-9);
      out.require(solved.p && std::abs(*solved.p) <= 1e-9, "solved p for v_init " + fmt(v));
    }
  }));

  results.push_back(run_timed("AC4", "a3 reproduces the same space at p = -1/2", 0.0, [&](Outcome& out) {
    for (double v : kReproductionVInits) {
      const auto family = make_family(SchemeKind::a3, v, o);
      const auto rep = check_reproduction(family, family.space(), -0.5, kmax, 1e-9);
      out.require(rep.verdict == Verdict::reproduces, "v_init " + fmt(v) + " residual " + fmt(rep.max_residual));
      for (int k = 0; k <= kmax; ++k) {
        const cplx d = eval(derivative(family.symbol_at(k), 1), 1.0);
        out.require(std::abs(d - cplx{-1.0, 0.0}) <= 1e-9, "a3'(1) at k=" + std::to_string(k));
      }
      const auto solved = solve_parametrization(family, family.space(), kmax, 1e-9);
      out.require(solved.p && std::abs(*solved.p + 0.5) <= 1e-9, "solved p for v_init " + fmt(v));
    }
  }));

  results.push_back(run_timed("AC5", "a4 reproduces {1, x, x^r e^(+-tx), r < 2} at p = -1/2", 0.0, [&](Outcome& out) {
    const double vs[] = {-0.5, 0.5, std::cos(2.0 * pi / 7.0), std::cosh(0.6), std::cos(0.8 * pi)};
    for (double v : vs) {
      const auto family = make_family(SchemeKind::a4, v, o);
      const auto space = spiral_space(frequency_from_v_init(v), 2);
      const auto rep = check_reproduction(family, space, -0.5, kmax, 1e-8);
      out.require(rep.verdict == Verdict::reproduces, "v_init " + fmt(v) + " residual " + fmt(rep.max_residual));
    }
  }));

  results.push_back(run_timed("AC6", "step-wise reproduction of cos/sin (and x e^ix for a4)", 1.0, [&](Outcome& out) {
    const double v = std::cos(1.0);
    struct Case {
      SchemeKind kind;
      double p;
    };
    for (const Case c : {Case{SchemeKind::a2, 0.0}, Case{SchemeKind::a3, -0.5}, Case{SchemeKind::a4, -0.5}}) {
      const auto family = make_family(c.kind, v, o);
      const auto& space = family.space();
      const std::size_t root = 1;
      out.require(std::abs(space[root].theta - cplx{0.0, 1.0}) < 1e-12, "space lacks theta = i");
      for (int r = 0; r < space[root].tau; ++r) {
        const double err = stepwise_reproduction_test(family, space, c.p, root, r, 5, 12);
        out.require(err < 1e-9, std::string(scheme_name(c.kind)) + " r=" + std::to_string(r) + " error " + fmt(err));
      }
    }
  }));

  results.push_back(run_timed("AC7", "conic sections are reproduced", 2.0, [&](Outcome& out) {
    for (SchemeKind kind : {SchemeKind::a2, SchemeKind::a4}) {
      const Shape& circle = shape(ShapeKind::circle);
      const auto family = make_family(kind, std::cos(2.0 * pi / 7.0), o);
      const double p = *family.declared_p();
      const auto refined = refine_levels(family, sample_shape(circle, 7, circle.default_spacing, p), 6);
      out.require(refined.back().size() == 7u * 64u, "circle point count");
      const double dev = reference_distance(circle, refined.back(), circle.default_spacing);
      out.require(dev < 1e-6, std::string(scheme_name(kind)) + " circle radial deviation " + fmt(dev));
    }
    for (SchemeKind kind : {SchemeKind::a2, SchemeKind::a3, SchemeKind::a4}) {
      for (ShapeKind sk : {ShapeKind::ellipse, ShapeKind::parabola, ShapeKind::hyperbola}) {
        const Shape& s = shape(sk);
        const auto family = make_family(kind, default_v_init(s, s.default_spacing), o);
        const double dev = shape_deviation(family, sk, 6, *family.declared_p());
        out.require(dev < 1e-5, std::string(scheme_name(kind)) + " " + std::string(s.name) + " distance " + fmt(dev));
      }
    }
  }));

  results.push_back(run_timed("AC8", "spirals and helices are reproduced", 2.0, [&](Outcome& out) {
    struct Case {
      ShapeKind shape;
      SchemeKind scheme;
      double v_init;
    };
    const Case cases[] = {
        {ShapeKind::archimedean_spiral, SchemeKind::a4, -0.5},
        {ShapeKind::circle_involute, SchemeKind::a4, -0.5},
        {ShapeKind::helix, SchemeKind::a2, std::cos(0.8 * pi)},
        {ShapeKind::helix, SchemeKind::a4, std::cos(0.8 * pi)},
        {ShapeKind::conical_spiral, SchemeKind::a4, std::cos(0.8 * pi)},
    };
    for (const auto& c : cases) {
      const auto family = make_family(c.scheme, c.v_init, o);
      const double dev = shape_deviation(family, c.shape, 5, *family.declared_p());
      out.require(dev < 1e-5, std::string(shape(c.shape).name) + " " + std::string(scheme_name(c.scheme)) +
                                  " distance " + fmt(dev));
    }
  }));

  results.push_back(run_timed("AC9", "shifted symbols reproduce with p + n", 0.0, [&](Outcome& out) {
    for (SchemeKind kind : {SchemeKind::a2, SchemeKind::a3}) {
      for (double v : {std::cos(2.0 * pi / 7.0), std::cosh(0.6)}) {
        const auto family = make_family(kind, v, o);
        const double p = *family.declared_p();
        for (int n : {-2, -1, 1, 2, 3}) {
          out.require(verify_shift_property(family, family.space(), p, n, kmax, 1e-9),
                      std::string(scheme_name(kind)) + " n=" + std::to_string(n) + " reproduction");
          const auto solved = solve_parametrization(family.shifted(n), family.space(), kmax, 1e-9);
          out.require(solved.p && std::abs(*solved.p - (p + n)) <= 1e-9,
                      std::string(scheme_name(kind)) + " n=" + std::to_string(n) + " solved p");
        }
      }
    }
  }));

  results.push_back(run_timed("AC10", "even/odd sub-mask moment identities", 0.0, [&](Outcome& out) {
    for (double v : kReproductionVInits) {
      for (const auto& [kind, p] : {std::pair{SchemeKind::a2, 0.0}, std::pair{SchemeKind::a4, -0.5}}) {
        const auto family = make_family(kind, v, o);
        const auto& space = family.space();
        for (int k = 0; k <= 5; ++k) {
          const auto mask = family.symbol_at(k);
          const auto roots = level_roots(space, k);
          // z_1 = 1 and z_2 = e^{-t/2^{k+1}}; the identities hold for r < tau of that root.
          for (std::size_t l : {std::size_t{0}, std::size_t{1}}) {
            const double res = verify_moment_identities(mask, roots.roots[l].z, roots.roots[l].tau, p);
            out.require(res < 1e-8 * mask.max_abs_coeff(),
                        std::string(scheme_name(kind)) + " k=" + std::to_string(k) + " root " +
                            std::to_string(l + 1) + " residual " + fmt(res));
          }
        }
      }
    }
  }));

  results.push_back(run_timed("AC11", "level symbols are divisible by the exponential B-spline", 0.0, [&](Outcome& out) {
    for (SchemeKind kind : kSchemes) {
      for (double v : kVInits) {
        const auto family = make_family(kind, v, o);
        for (int k = 0; k <= kmax; ++k) {
          const auto a = family.symbol_at(k);
          const auto split = divide_with_remainder(a, exp_bspline_symbol(family.space(), k));
          const double rem = split.remainder.max_abs_coeff();
          out.require(rem < 1e-10 * a.max_abs_coeff(), std::string(scheme_name(kind)) + " v_init " + fmt(v) +
                                                           " k=" + std::to_string(k) + " remainder " + fmt(rem));
        }
      }
    }
  }));

  results.push_back(run_timed("AC12", "level masks converge to the stationary limits", 0.0, [&](Outcome& out) {
    const int top = std::max(o.convergence_level, 20);
    for (SchemeKind kind : kSchemes) {
      const auto limit = stationary_limit_symbol(kind);
      for (double v : {-0.5, 0.5, std::cosh(0.6), std::cos(2.0 * pi / 7.0)}) {
        const auto family = make_family(kind, v, o);
        double prev = max_coeff_distance(family.symbol_at(2), limit);
        for (int k = 3; k <= top; ++k) {
          const double d = max_coeff_distance(family.symbol_at(k), limit);
          out.require(d < prev, std::string(scheme_name(kind)) + " v_init " + fmt(v) + " not decreasing at k=" +
                                    std::to_string(k));
          prev = d;
        }
        out.require(prev < 1e-6, std::string(scheme_name(kind)) + " v_init " + fmt(v) + " distance " + fmt(prev) +
                                     " at k=" + std::to_string(top));
      }
    }
  }));

  results.push_back(run_timed("AC13", "symmetry and interpolation corollaries", 0.0, [&](Outcome& out) {
    for (double v : kReproductionVInits) {
      for (SchemeKind kind : {SchemeKind::a2, SchemeKind::a3, SchemeKind::a4}) {
        const auto family = make_family(kind, v, o);
        const Symmetry expected = kind == SchemeKind::a2 ? Symmetry::odd_symmetric : Symmetry::even_symmetric;
        const double p = kind == SchemeKind::a2 ? 0.0 : -0.5;
        for (int k = 0; k <= kmax; ++k)
          out.require(classify_symmetry(family.symbol_at(k), 1e-12) == expected,
                      std::string(scheme_name(kind)) + " symmetry at k=" + std::to_string(k));
        out.require(check_reproduction(family, family.space(), p, kmax, 1e-9).passed(),
                    std::string(scheme_name(kind)) + " reproduction with the symmetry-implied p");
      }
    }
    const auto mask = four_point_mask();
    out.require(is_interpolatory(mask, 1e-12), "four-point mask is interpolatory");
    const auto family = SymbolFamily::stationary("four_point", mask, ExponentialSpace({{0.0, 4}}));
    const auto solved = solve_parametrization(family, family.space(), 0, 1e-9);
    out.require(solved.p && std::abs(*solved.p) <= 1e-12, "four-point solved p");
  }));

  return results;
}

std::vector<CriterionResult> run_invariants(const SelftestOptions& o) {
  std::vector<CriterionResult> results;
  std::mt19937_64 rng(20100217);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  const auto random_poly = [&](int lo, int width) {
    std::vector<cplx> c(static_cast<std::size_t>(width));
    for (auto& x : c) x = {coeff(rng), coeff(rng)};
    return LaurentPolynomial(lo, std::move(c));
  };

  results.push_back(run_timed("INV-laurent", "multiplication, division and shifts agree with evaluation", 0.0,
                              [&](Outcome& out) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto p = random_poly(trial % 7 - 3, 1 + trial % 9);
      const auto q = random_poly(trial % 5 - 2, 1 + trial % 6);
      const cplx z = std::polar(1.0, angle(rng));
      const cplx lhs = eval(mul(p, q), z);
      const cplx rhs = eval(p, z) * eval(q, z);
      out.require(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)) * 10, "mul/eval");
      const auto split = divide_with_remainder(p, q);
      const double scale = std::max(1.0, p.max_abs_coeff());
      out.require(max_coeff_distance(split.quotient * q + split.remainder, p) <= 1e-9 * scale, "division reconstruction");
      out.require(max_coeff_distance(derivative(derivative(p, 1), 2), derivative(p, 3)) <= 1e-12 * scale * 1e3,
                  "derivative chain");
    }
  }));

  results.push_back(run_timed("INV-expspace", "gamma roots, level-root squares and annihilation", 0.0, [&](Outcome& out) {
    for (cplx t : {cplx{0.0, 0.0}, cplx{1.0, 0.0}, cplx{0.0, 1.0}}) {
      for (const auto& space : {mixed_exponential_space(t, 2), multi_frequency_space(t, 2), spiral_space(t, 2)}) {
        const auto gamma = gamma_polynomial(space);
        for (const auto& f : space.freqs()) {
          LaurentPolynomial d = gamma;
          for (int r = 0; r < f.tau; ++r, d = derivative(d, 1))
            out.require(std::abs(eval(d, f.theta)) < 1e-10 * gamma.max_abs_coeff(), "gamma root");
          std::uniform_real_distribution<double> xs(-2.0, 2.0);
          std::vector<double> pts(5);
          for (auto& x : pts) x = xs(rng);
          for (int r = 0; r < f.tau; ++r)
            out.require(annihilation_residual(space, f.theta, r, pts) < 1e-9, "annihilation");
        }
        for (int k = 0; k < 20; ++k) {
          const auto now = level_roots(space, k);
          const auto next = level_roots(space, k + 1);
          for (std::size_t l = 0; l < now.roots.size(); ++l)
            out.require(std::abs(next.roots[l].z * next.roots[l].z - now.roots[l].z) <= 1e-12 * std::abs(now.roots[l].z),
                        "square relation");
        }
      }
    }
  }));

  results.push_back(run_timed("INV-schemes", "a(1) = 2, a(-1) = 0, real masks, fixed supports, v matches roots", 0.0,
                              [&](Outcome& out) {
    const std::size_t widths[] = {7, 9, 8, 12};
    for (std::size_t s = 0; s < 4; ++s) {
      for (double v : kVInits) {
        const auto family = make_family(kSchemes[s], v, o);
        for (int k = 0; k <= 10; ++k) {
          const auto a = family.symbol_at(k);
          out.require(std::abs(eval(a, 1.0) - 2.0) < 1e-12 && std::abs(eval(a, -1.0)) < 1e-12, "a(1), a(-1)");
          out.require(a.is_real(1e-12), "realness");
          out.require(a.width() == widths[s], "support width");
          const auto roots = level_roots(family.space(), k);
          if (roots.roots.size() >= 3) {
            const cplx mean = (roots.roots[1].z + roots.roots[2].z) / 2.0;
            out.require(std::abs(mean - family.v_at(k)) < 1e-12, "v-to-root consistency");
          }
        }
      }
    }
  }));

  results.push_back(run_timed("INV-a2-polynomial", "a2 at v = 1 reproduces cubics at p = 0", 0.0, [&](Outcome& out) {
    const auto family = make_family(SchemeKind::a2, 1.0, o);
    const auto rep = check_reproduction(family, family.space(), 0.0, o.k_max, 1e-9);
    out.require(rep.passed(), "residual " + fmt(rep.max_residual));
  }));

  results.push_back(run_timed("INV-refine", "parameter bookkeeping, linearity, shrinkage", 0.0, [&](Outcome& out) {
    const auto family = make_family(SchemeKind::a4, std::cos(2.0 * pi / 7.0), o);
    const auto mask = family.symbol_at(0);
    std::vector<double> f(30), g(30), h(30);
    for (std::size_t i = 0; i < f.size(); ++i) {
      f[i] = coeff(rng);
      g[i] = coeff(rng);
      h[i] = 0.7 * f[i] - 1.3 * g[i];
    }
    const auto rf = refine_once(mask, RefinedData::scalar(f, -4, -0.5));
    const auto rg = refine_once(mask, RefinedData::scalar(g, -4, -0.5));
    const auto rh = refine_once(mask, RefinedData::scalar(h, -4, -0.5));
    out.require(rf.size() == 2 * f.size() + 2 - mask.width(), "interior shrinkage");
    for (std::size_t m = 0; m < rf.size(); ++m) {
      const double expect = 0.7 * rf.point(m)[0] - 1.3 * rg.point(m)[0];
      out.require(std::abs(rh.point(m)[0] - expect) <= 1e-12 * std::max(1.0, std::abs(expect)) * 10, "linearity");
      out.require(rf.parameter(m) == (static_cast<double>(rf.index(m)) - 0.5) / 2.0, "half-grid parameters");
    }
  }));

  results.push_back(run_timed("INV-equivalence", "condition verdict agrees with step-wise refinement", 0.0, [&](Outcome& out) {
    for (SchemeKind kind : kSchemes) {
      for (double v : {std::cos(1.0), std::cosh(0.6)}) {
        const auto family = make_family(kind, v, o);
        const auto& space = family.space();
        const double p = *family.declared_p();
        const bool by_conditions = check_reproduction(family, space, p, 5, 1e-9).passed();
        double worst = 0.0;
        for (std::size_t l = 0; l < space.size(); ++l)
          for (int r = 0; r < space[l].tau; ++r)
            worst = std::max(worst, stepwise_reproduction_test(family, space, p, l, r, 5, 12));
        out.require(by_conditions == (worst < 1e-8), std::string(scheme_name(kind)) + " verdict/step-wise mismatch");
        out.require(by_conditions == (kind != SchemeKind::a1), std::string(scheme_name(kind)) + " verdict");
      }
    }
  }));

  results.push_back(run_timed("INV-uniqueness", "only the solved p reproduces", 0.0, [&](Outcome& out) {
    for (SchemeKind kind : {SchemeKind::a2, SchemeKind::a3, SchemeKind::a4}) {
      const auto family = make_family(kind, std::cos(2.0 * pi / 7.0), o);
      const auto solved = solve_parametrization(family, family.space(), o.k_max, 1e-9);
      out.require(solved.p.has_value(), std::string(scheme_name(kind)) + " solvable");
      if (!solved.p) continue;
      for (double dp : {-0.5, 0.5})
        out.require(!check_reproduction(family, family.space(), *solved.p + dp, o.k_max, 1e-9).passed(),
                    std::string(scheme_name(kind)) + " p+" + fmt(dp) + " should fail");
    }
    const auto solved = solve_parametrization(make_family(SchemeKind::a2, 0.5, o), ExponentialSpace({{0.0, 1}}), 0);
    out.require(!solved.p.has_value(), "constants-only space leaves p undetermined");
  }));

  results.push_back(run_timed("INV-interpolatory", "interpolatory masks solve to p = 0", 0.0, [&](Outcome& out) {
    const LaurentPolynomial masks[] = {four_point_mask(), LaurentPolynomial(-1, {0.5, 1.0, 0.5})};
    for (const auto& mask : masks) {
      if (!is_interpolatory(mask, 1e-12)) continue;
      const auto family = SymbolFamily::stationary("interp", mask, ExponentialSpace({{0.0, 2}}));
      const auto solved = solve_parametrization(family, family.space(), 0, 1e-9);
      out.require(solved.p && std::abs(*solved.p) < 1e-12, "solved p");
    }
  }));

  return results;
}

void print_results(std::ostream& os, const std::vector<CriterionResult>& results) {
  char buf[64];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%.3f s", r.seconds);
    os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << "  " << r.title << "  (" << r.detail << ", " << buf << ")\n";
  }
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace expsubdiv
