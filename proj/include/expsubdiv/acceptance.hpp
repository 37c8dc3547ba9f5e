#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "expsubdiv/schemes.hpp"

namespace expsubdiv {

struct CriterionResult {
  std::string id;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelftestOptions {
  /// Constant used by every a2 family built by the suite.
  double alpha_limit = kAlphaPolynomialLimit;
  /// Highest level for the algebraic condition checks.
  int k_max = 8;
  /// Level at which limit-mask convergence is judged.
  int convergence_level = 20;
};

/// The thirteen acceptance criteria with their pinned tolerances.
std::vector<CriterionResult> run_acceptance(const SelftestOptions& options = {});

/// Module invariants: polynomial algebra, level roots, refinement
/// bookkeeping and agreement between algebraic and step-wise checks.
std::vector<CriterionResult> run_invariants(const SelftestOptions& options = {});

/// One "[PASS]/[FAIL] id title (detail, seconds)" line per result.
void print_results(std::ostream& os, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace expsubdiv
