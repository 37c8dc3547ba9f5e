#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expsubdiv/expspace.hpp"
#include "expsubdiv/laurent.hpp"
#include "expsubdiv/schemes.hpp"

namespace expsubdiv {

inline constexpr double kDefaultTolerance = 1e-9;

enum class ConditionKind {
  at_root,          // d^r a(z_l) against 2 z_l^{p-r} prod_{i<r} (p - i)
  at_negated_root,  // d^r a(-z_l) against 0
  opposite_pair,    // a(z_l) and a(-z_l) both vanish: opposite roots present
};

enum class Verdict { generates, reproduces, fails };

const char* to_string(ConditionKind kind);
const char* to_string(Verdict verdict);

struct ConditionEntry {
  std::size_t root = 0;  // index into the space's frequencies
  int order = 0;
  ConditionKind kind = ConditionKind::at_root;
  cplx z;                // evaluation point
  cplx value;
  cplx target;
  double residual = 0.0;  // |value - target|, absolute
};

struct LevelConditions {
  int k = 0;
  double scale = 0.0;  // max |a^(k)_j|
  std::vector<ConditionEntry> entries;
};

/// Residuals of the algebraic generation/reproduction conditions, per level,
/// root and derivative order. A residual passes when it is below
/// tolerance * scale of its level.
struct ConditionReport {
  std::string scheme;
  ExponentialSpace space;
  std::optional<double> p;
  std::vector<LevelConditions> per_level;
  Verdict verdict = Verdict::fails;
  double max_residual = 0.0;  // largest residual / scale over gating entries
  double tolerance = kDefaultTolerance;
  std::string diagnostic;

  bool passed() const { return verdict != Verdict::fails; }
  /// Largest residual / scale over entries matching root, and optionally kind.
  double max_relative_residual(std::size_t root, std::optional<ConditionKind> kind = std::nullopt) const;
};

/// d^r a^(k)(-z_l) = 0 for r < tau_l, k = 0..k_max. Also flags roots where
/// a^(k) vanishes at both z_l and -z_l, which violates the no-opposite-roots
/// hypothesis; such a flag fails the check.
ConditionReport check_generation(const SymbolFamily& family, const ExponentialSpace& space, int k_max,
                                 double tol = kDefaultTolerance);

/// The full set of reproduction conditions for parametrization shift p.
/// Powers z^{p-r} use the principal branch; spaces with |Im theta| / 2 >= pi
/// are rejected with a diagnostic.
ConditionReport check_reproduction(const SymbolFamily& family, const ExponentialSpace& space, double p,
                                   int k_max, double tol = kDefaultTolerance);

struct ParametrizationResult {
  std::optional<double> p;
  std::string diagnostic;
};

/// Finds the p for which the family reproduces the space at levels 0..k.
/// With a polynomial frequency of multiplicity > 1 the candidate is
/// p = a^(k)'(1) / 2; otherwise log(a^(k)(z_l) / 2) / log(z_l) over all
/// z_l != 1, which must agree. The candidate is accepted only if
/// check_reproduction passes.
ParametrizationResult solve_parametrization(const SymbolFamily& family, const ExponentialSpace& space, int k,
                                            double tol = kDefaultTolerance);

enum class Symmetry { odd_symmetric, even_symmetric, none };
const char* to_string(Symmetry s);

/// odd: a_{-i} = a_i; even: a_{-i} = a_{i-1}. Compared coefficient-wise
/// against tol * max |a_j|.
Symmetry classify_symmetry(const LaurentPolynomial& mask, double tol = kDefaultTolerance);

/// a(z) + a(-z) = 2: every even coefficient is zero except a_0 = 1.
bool is_interpolatory(const LaurentPolynomial& mask, double tol = kDefaultTolerance);

/// Largest deviation over r < tau of the four even/odd sub-mask moment
/// identities, e.g. sum_j a_{2j} (2j)^r z^{2j} = p^r z^p.
double verify_moment_identities(const LaurentPolynomial& mask, cplx z_root, int tau, double p);

/// Samples f(x) = x^r e^{theta_root x} on (i + p) / 2^k for |i| <= window,
/// refines once with a^(k) and compares to f on the level k+1 grid, for
/// k = 0..k_max. Returns the largest absolute error. Throws
/// std::domain_error when the window cannot hold one stencil.
double stepwise_reproduction_test(const SymbolFamily& family, const ExponentialSpace& space, double p,
                                  std::size_t root, int r, int k_max, int window);

/// Reproduction of z^n a^(k)(z) with shift p + n.
bool verify_shift_property(const SymbolFamily& family, const ExponentialSpace& space, double p, int n,
                           int k_max, double tol = kDefaultTolerance);

/// Non-gating diagnostic: all roots of the polynomial part from companion
/// matrix eigenvalues, and the pairs (w, -w) found among them within tol.
struct RootAudit {
  std::vector<cplx> roots;
  std::vector<std::pair<cplx, cplx>> opposite_pairs;
};
RootAudit audit_opposite_roots(const LaurentPolynomial& mask, double tol = 1e-6);

}  // namespace expsubdiv
