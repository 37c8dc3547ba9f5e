#include "expsubdiv/expspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace expsubdiv {

ExponentialSpace::ExponentialSpace(std::vector<Frequency> freqs) : freqs_(std::move(freqs)) {
  for (std::size_t i = 0; i < freqs_.size(); ++i) {
    if (freqs_[i].tau < 1) throw std::invalid_argument("ExponentialSpace: multiplicity must be positive");
    for (std::size_t j = 0; j < i; ++j)
      if (freqs_[i].theta == freqs_[j].theta)
        throw std::invalid_argument("ExponentialSpace: frequencies must be pairwise distinct");
  }
}

ExponentialSpace ExponentialSpace::merged(std::span<const Frequency> freqs) {
  std::vector<Frequency> out;
  for (const auto& f : freqs) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Frequency& g) { return g.theta == f.theta; });
    if (it == out.end())
      out.push_back(f);
    else
      it->tau += f.tau;
  }
  return ExponentialSpace(std::move(out));
}

int ExponentialSpace::order() const {
  int t = 0;
  for (const auto& f : freqs_) t += f.tau;
  return t;
}

std::optional<std::size_t> ExponentialSpace::index_of(cplx theta) const {
  for (std::size_t i = 0; i < freqs_.size(); ++i)
    if (freqs_[i].theta == theta) return i;
  return std::nullopt;
}

bool ExponentialSpace::contains(cplx theta, int r) const {
  const auto i = index_of(theta);
  return i && r >= 0 && r < freqs_[*i].tau;
}

ExponentialSpace mixed_exponential_space(cplx t, int n) {
  const Frequency f[] = {{0.0, n + 1}, {t, 1}, {-t, 1}};
  return ExponentialSpace::merged(f);
}

ExponentialSpace multi_frequency_space(cplx t, int n) {
  std::vector<Frequency> f{{0.0, 2}};
  for (int j = 1; j <= n; ++j) {
    f.push_back({static_cast<double>(j) * t, 1});
    f.push_back({-static_cast<double>(j) * t, 1});
  }
  return ExponentialSpace::merged(f);
}

ExponentialSpace spiral_space(cplx t, int n) {
  const Frequency f[] = {{0.0, 2}, {t, n}, {-t, n}};
  return ExponentialSpace::merged(f);
}

cplx basis_eval(cplx theta, int r, double x) {
  if (r < 0) throw std::invalid_argument("basis_eval: negative power");
  const double xr = r == 0 ? 1.0 : std::pow(x, r);
  return xr * std::exp(theta * x);
}

LaurentPolynomial gamma_polynomial(const ExponentialSpace& space) {
  LaurentPolynomial g = LaurentPolynomial::constant(1.0);
  for (const auto& f : space.freqs()) {
    const LaurentPolynomial factor{0, std::vector<cplx>{-f.theta, 1.0}};
    g = mul(g, power(factor, f.tau));
  }
  return g;
}

namespace {

// f(x) = q(x) e^{theta x} with q stored by ascending powers. D f = (q' + theta q) e^{theta x}.
std::vector<cplx> differentiate(const std::vector<cplx>& q, cplx theta) {
  std::vector<cplx> out(q.size());
  for (std::size_t m = 0; m < q.size(); ++m) {
    out[m] = theta * q[m];
    if (m + 1 < q.size()) out[m] += static_cast<double>(m + 1) * q[m + 1];
  }
  return out;
}

cplx eval_poly(const std::vector<cplx>& q, double x) {
  cplx acc{0.0, 0.0};
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

double annihilation_residual(const ExponentialSpace& space, cplx theta, int r,
                             std::span<const double> sample_points) {
  if (!space.contains(theta, r))
    throw std::domain_error("annihilation_residual: (theta, r) is not a basis index of the space");

  const LaurentPolynomial gamma = gamma_polynomial(space);
  std::vector<cplx> term(static_cast<std::size_t>(r) + 1, 0.0);
  term.back() = 1.0;
  std::vector<cplx> total(term.size(), 0.0);
  for (int j = 0; j <= gamma.hi(); ++j) {
    const cplx g = gamma[j];
    for (std::size_t m = 0; m < term.size(); ++m) total[m] += g * term[m];
    term = differentiate(term, theta);
  }

  double worst = 0.0;
  for (double x : sample_points) worst = std::max(worst, std::abs(eval_poly(total, x) * std::exp(theta * x)));
  return worst;
}

cplx level_root(cplx theta, int k) {
  if (k < 0) throw std::invalid_argument("level_root: negative level");
  return std::exp(-theta / std::ldexp(1.0, k + 1));
}

LevelRoots level_roots(const ExponentialSpace& space, int k) {
  LevelRoots out{k, {}};
  out.roots.reserve(space.size());
  for (const auto& f : space.freqs()) out.roots.push_back({level_root(f.theta, k), f.tau});
  return out;
}

}  // namespace expsubdiv
