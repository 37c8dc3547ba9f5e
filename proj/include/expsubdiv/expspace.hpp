#pragma once

#include <optional>
#include <span>
#include <vector>

#include "expsubdiv/laurent.hpp"

namespace expsubdiv {

/// One frequency theta of an exponential-polynomial space together with its
/// multiplicity tau; contributes x^r e^{theta x}, r < tau, to the basis.
struct Frequency {
  cplx theta;
  int tau = 1;
};

/// The space spanned by x^r e^{theta_l x}, r = 0..tau_l-1. It is the null
/// space of the differential operator whose characteristic polynomial is
/// prod_l (z - theta_l)^{tau_l}.
class ExponentialSpace {
 public:
  ExponentialSpace() = default;
  /// Throws std::invalid_argument on tau < 1 or repeated theta.
  explicit ExponentialSpace(std::vector<Frequency> freqs);

  /// Like the constructor but sums the multiplicities of equal frequencies,
  /// e.g. {0, t, -t} with t = 0 collapses into a single polynomial frequency.
  static ExponentialSpace merged(std::span<const Frequency> freqs);

  std::span<const Frequency> freqs() const { return freqs_; }
  std::size_t size() const { return freqs_.size(); }
  const Frequency& operator[](std::size_t i) const { return freqs_[i]; }

  /// Total order T, the dimension of the space.
  int order() const;
  std::optional<std::size_t> index_of(cplx theta) const;
  bool contains(cplx theta, int r) const;

 private:
  std::vector<Frequency> freqs_;
};

/// {1, x, ..., x^n, e^{tx}, e^{-tx}}.
ExponentialSpace mixed_exponential_space(cplx t, int n);
/// {1, x, e^{tx}, e^{-tx}, ..., e^{ntx}, e^{-ntx}}.
ExponentialSpace multi_frequency_space(cplx t, int n);
/// {1, x} together with x^r e^{+-tx} for r < n.
ExponentialSpace spiral_space(cplx t, int n);

/// x^r e^{theta x}, with 0^0 = 1.
cplx basis_eval(cplx theta, int r, double x);

/// Expands prod_l (z - theta_l)^{tau_l}; monic of degree T.
LaurentPolynomial gamma_polynomial(const ExponentialSpace& space);

/// Applies sum_j gamma_j D^j to x^r e^{theta x} exactly and returns the
/// largest modulus over the sample points. Throws std::domain_error when
/// (theta, r) is not a basis index of the space.
double annihilation_residual(const ExponentialSpace& space, cplx theta, int r,
                             std::span<const double> sample_points);

struct LevelRoot {
  cplx z;
  int tau = 1;
};

/// z_l^(k) = exp(-theta_l / 2^{k+1}) for every frequency of a space.
struct LevelRoots {
  int k = 0;
  std::vector<LevelRoot> roots;
};

/// Computed directly from theta at every level; never by repeated square roots.
LevelRoots level_roots(const ExponentialSpace& space, int k);

cplx level_root(cplx theta, int k);

}  // namespace expsubdiv
