#include "expsubdiv/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "expsubdiv/subdivision.hpp"

namespace expsubdiv {

const char* to_string(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::at_root: return "at_root";
    case ConditionKind::at_negated_root: return "at_negated_root";
    case ConditionKind::opposite_pair: return "opposite_pair";
  }
  return "unknown";
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::generates: return "generates";
    case Verdict::reproduces: return "reproduces";
    case Verdict::fails: return "fails";
  }
  return "unknown";
}

const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::odd_symmetric: return "odd_symmetric";
    case Symmetry::even_symmetric: return "even_symmetric";
    case Symmetry::none: return "none";
  }
  return "unknown";
}

double ConditionReport::max_relative_residual(std::size_t root, std::optional<ConditionKind> kind) const {
  double m = 0.0;
  for (const auto& level : per_level)
    for (const auto& e : level.entries)
      if (e.root == root && e.kind != ConditionKind::opposite_pair && (!kind || e.kind == *kind))
        m = std::max(m, e.residual / level.scale);
  return m;
}

namespace {

// prod_{i<r} (p - i)
double falling_factorial(double p, int r) {
  double f = 1.0;
  for (int i = 0; i < r; ++i) f *= p - static_cast<double>(i);
  return f;
}

// Principal branch z^q = exp(q log z).
cplx principal_power(cplx z, double q) { return std::exp(q * std::log(z)); }

double power_or_one(double base, int r) { return r == 0 ? 1.0 : std::pow(base, r); }

bool branch_ok(const ExponentialSpace& space, std::string& diagnostic) {
  for (const auto& f : space.freqs()) {
    if (std::abs(f.theta.imag()) / 2.0 >= std::numbers::pi) {
      diagnostic = "frequency with |Im theta| / 2 >= pi: principal-branch powers of z_l^(0) are ambiguous";
      return false;
    }
  }
  return true;
}

// Fills max_residual and verdict from the gating entries.
void finish(ConditionReport& report, Verdict success) {
  bool ok = report.diagnostic.empty();
  double worst = 0.0;
  for (const auto& level : report.per_level) {
    for (const auto& e : level.entries) {
      if (e.kind == ConditionKind::opposite_pair) {
        ok = false;
        continue;
      }
      const double rel = level.scale > 0.0 ? e.residual / level.scale : e.residual;
      worst = std::max(worst, rel);
    }
  }
  report.max_residual = worst;
  report.verdict = ok && worst < report.tolerance ? success : Verdict::fails;
}

}  // namespace

ConditionReport check_generation(const SymbolFamily& family, const ExponentialSpace& space, int k_max,
                                 double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_generation: tolerance must be positive");
  ConditionReport report;
  report.scheme = family.name();
  report.space = space;
  report.tolerance = tol;

  for (int k = 0; k <= k_max; ++k) {
    const LaurentPolynomial a = family.symbol_at(k);
    LevelConditions level{k, a.max_abs_coeff(), {}};
    const LevelRoots roots = level_roots(space, k);
    LaurentPolynomial da = a;
    int order = 0;
    const int max_tau = std::max_element(roots.roots.begin(), roots.roots.end(),
                                         [](const LevelRoot& x, const LevelRoot& y) { return x.tau < y.tau; })
                            ->tau;
    for (; order < max_tau; ++order, da = derivative(da, 1)) {
      for (std::size_t l = 0; l < roots.roots.size(); ++l) {
        const auto& root = roots.roots[l];
        if (order >= root.tau) continue;
        const cplx value = eval(da, -root.z);
        level.entries.push_back({l, order, ConditionKind::at_negated_root, -root.z, value, 0.0, std::abs(value)});
        if (order == 0) {
          const cplx at_root = eval(a, root.z);
          if (std::abs(value) < tol * level.scale && std::abs(at_root) < tol * level.scale)
            level.entries.push_back({l, 0, ConditionKind::opposite_pair, root.z, at_root, 0.0, std::abs(at_root)});
        }
      }
    }
    report.per_level.push_back(std::move(level));
  }
  finish(report, Verdict::generates);
  if (report.verdict == Verdict::fails && report.diagnostic.empty()) {
    for (const auto& level : report.per_level)
      for (const auto& e : level.entries)
        if (e.kind == ConditionKind::opposite_pair) report.diagnostic = "symbol vanishes at an opposite root pair";
  }
  return report;
}

ConditionReport check_reproduction(const SymbolFamily& family, const ExponentialSpace& space, double p,
                                   int k_max, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("check_reproduction: tolerance must be positive");
  ConditionReport report;
  report.scheme = family.name();
  report.space = space;
  report.p = p;
  report.tolerance = tol;
  if (!branch_ok(space, report.diagnostic)) {
    finish(report, Verdict::reproduces);
    return report;
  }

  int max_tau = 0;
  for (const auto& f : space.freqs()) max_tau = std::max(max_tau, f.tau);

  for (int k = 0; k <= k_max; ++k) {
    const LaurentPolynomial a = family.symbol_at(k);
    LevelConditions level{k, a.max_abs_coeff(), {}};
    const LevelRoots roots = level_roots(space, k);
    LaurentPolynomial da = a;
    for (int order = 0; order < max_tau; ++order, da = derivative(da, 1)) {
      for (std::size_t l = 0; l < roots.roots.size(); ++l) {
        const auto& root = roots.roots[l];
        if (order >= root.tau) continue;
        const cplx target = 2.0 * principal_power(root.z, p - order) * falling_factorial(p, order);
        const cplx value = eval(da, root.z);
        level.entries.push_back({l, order, ConditionKind::at_root, root.z, value, target, std::abs(value - target)});
        const cplx neg = eval(da, -root.z);
        level.entries.push_back({l, order, ConditionKind::at_negated_root, -root.z, neg, 0.0, std::abs(neg)});
      }
    }
    report.per_level.push_back(std::move(level));
  }
  finish(report, Verdict::reproduces);
  return report;
}

ParametrizationResult solve_parametrization(const SymbolFamily& family, const ExponentialSpace& space, int k,
                                            double tol) {
  if (space.size() == 0) return {std::nullopt, "empty space"};
  const auto zero = space.index_of(0.0);
  if (space.size() == 1 && zero && space[*zero].tau == 1)
    return {std::nullopt, "p undetermined by this space: constants alone fix no parametrization"};

  const LaurentPolynomial a = family.symbol_at(k);
  const double scale = a.max_abs_coeff();
  double candidate = 0.0;

  if (zero && space[*zero].tau > 1) {
    const cplx d = eval(derivative(a, 1), 1.0) / 2.0;
    if (std::abs(d.imag()) > tol * std::max(1.0, scale))
      return {std::nullopt, "derivative at z = 1 is not real"};
    candidate = d.real();
  } else {
    std::optional<double> first;
    for (const auto& root : level_roots(space, k).roots) {
      if (std::abs(root.z - 1.0) < 1e-14) continue;
      const cplx ratio = eval(a, root.z) / 2.0;
      if (std::abs(ratio) == 0.0) return {std::nullopt, "symbol vanishes at a level root"};
      const cplx pk = std::log(ratio) / std::log(root.z);
      if (std::abs(pk.imag()) > tol * std::max(1.0, std::abs(pk)))
        return {std::nullopt, "log-based candidate is not real"};
      if (!first)
        first = pk.real();
      else if (std::abs(pk.real() - *first) > tol * std::max(1.0, std::abs(*first)))
        return {std::nullopt, "log-based candidates disagree across roots"};
    }
    if (!first) return {std::nullopt, "no root z_l != 1 available for the log formula"};
    candidate = *first;
  }

  const ConditionReport check = check_reproduction(family, space, candidate, k, tol);
  if (!check.passed()) {
    return {std::nullopt, "candidate p = " + std::to_string(candidate) +
                              " fails the reproduction conditions (max relative residual " +
                              std::to_string(check.max_residual) + ")"};
  }
  return {candidate, {}};
}

Symmetry classify_symmetry(const LaurentPolynomial& mask, double tol) {
  if (mask.is_zero()) return Symmetry::none;
  const double bound = tol * mask.max_abs_coeff();
  const int reach = std::max(std::abs(mask.lo()), std::abs(mask.hi())) + 1;
  bool odd = true;
  bool even = true;
  for (int i = -reach; i <= reach; ++i) {
    if (std::abs(mask[-i] - mask[i]) > bound) odd = false;
    if (std::abs(mask[-i] - mask[i - 1]) > bound) even = false;
  }
  if (odd) return Symmetry::odd_symmetric;
  if (even) return Symmetry::even_symmetric;
  return Symmetry::none;
}

bool is_interpolatory(const LaurentPolynomial& mask, double tol) {
  if (std::abs(mask[0] - 1.0) > tol) return false;
  for (int d = mask.lo(); d <= mask.hi(); ++d)
    if (d != 0 && d % 2 == 0 && std::abs(mask[d]) > tol) return false;
  return true;
}

double verify_moment_identities(const LaurentPolynomial& mask, cplx z_root, int tau, double p) {
  if (tau < 1) throw std::invalid_argument("verify_moment_identities: tau must be positive");
  const cplx zp = principal_power(z_root, p);
  double worst = 0.0;
  for (int r = 0; r < tau; ++r) {
    cplx even_a{0.0, 0.0}, even_b{0.0, 0.0}, odd_a{0.0, 0.0}, odd_b{0.0, 0.0};
    for (int d = mask.lo(); d <= mask.hi(); ++d) {
      const cplx term = mask[d] * integer_power(z_root, d);
      if (d % 2 == 0) {
        even_a += term * power_or_one(d, r);
        even_b += term * power_or_one(d + 1, r);
      } else {
        odd_a += term * power_or_one(d - 1, r);
        odd_b += term * power_or_one(d, r);
      }
    }
    worst = std::max({worst, std::abs(even_a - power_or_one(p, r) * zp),
                      std::abs(even_b - power_or_one(p + 1.0, r) * zp),
                      std::abs(odd_a - power_or_one(p - 1.0, r) * zp),
                      std::abs(odd_b - power_or_one(p, r) * zp)});
  }
  return worst;
}

double stepwise_reproduction_test(const SymbolFamily& family, const ExponentialSpace& space, double p,
                                  std::size_t root, int r, int k_max, int window) {
  if (root >= space.size() || r < 0 || r >= space[root].tau)
    throw std::invalid_argument("stepwise_reproduction_test: (root, r) is not a basis index of the space");
  if (window < 1) throw std::domain_error("stepwise_reproduction_test: window must be positive");
  const cplx theta = space[root].theta;

  double worst = 0.0;
  for (int k = 0; k <= k_max; ++k) {
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(2 * window + 1) * 2);
    const double h = std::ldexp(1.0, -k);
    for (int j = -window; j <= window; ++j) {
      const cplx f = basis_eval(theta, r, (j + p) * h);
      coords.push_back(f.real());
      coords.push_back(f.imag());
    }
    const RefinedData samples(k, -window, 2, std::move(coords), p);
    const RefinedData refined = refine_once(family.symbol_at(k), samples);
    for (std::size_t m = 0; m < refined.size(); ++m) {
      const cplx expected = basis_eval(theta, r, refined.parameter(m));
      const auto got = refined.point(m);
      worst = std::max({worst, std::abs(got[0] - expected.real()), std::abs(got[1] - expected.imag())});
    }
  }
  return worst;
}

bool verify_shift_property(const SymbolFamily& family, const ExponentialSpace& space, double p, int n,
                           int k_max, double tol) {
  return check_reproduction(family.shifted(n), space, p + n, k_max, tol).passed();
}

RootAudit audit_opposite_roots(const LaurentPolynomial& mask, double tol) {
  RootAudit audit;
  const auto c = mask.coeffs();
  if (c.size() < 2) return audit;
  const Eigen::Index n = static_cast<Eigen::Index>(c.size()) - 1;
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<std::size_t>(i)] / c.back();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const auto& ev = solver.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) audit.roots.push_back(ev(i));
  for (std::size_t i = 0; i < audit.roots.size(); ++i)
    for (std::size_t j = i + 1; j < audit.roots.size(); ++j)
      if (std::abs(audit.roots[i] + audit.roots[j]) < tol * std::max(1.0, std::abs(audit.roots[i])))
        audit.opposite_pairs.emplace_back(audit.roots[i], audit.roots[j]);
  return audit;
}

}  // namespace expsubdiv
