#include "expsubdiv/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace expsubdiv {

LaurentPolynomial::LaurentPolynomial(int lo, std::vector<cplx> coeffs)
    : lo_(lo), coeffs_(std::move(coeffs)) {
  normalize();
}

LaurentPolynomial::LaurentPolynomial(int lo, std::initializer_list<double> real_coeffs)
    : lo_(lo), coeffs_(real_coeffs.begin(), real_coeffs.end()) {
  normalize();
}

LaurentPolynomial LaurentPolynomial::constant(cplx c) { return {0, std::vector<cplx>{c}}; }

LaurentPolynomial LaurentPolynomial::monomial(int degree, cplx c) {
  return {degree, std::vector<cplx>{c}};
}

LaurentPolynomial LaurentPolynomial::from_real(int lo, std::span<const double> coeffs) {
  return {lo, std::vector<cplx>(coeffs.begin(), coeffs.end())};
}

void LaurentPolynomial::normalize() {
  const auto nonzero = [](cplx c) { return c != cplx{0.0, 0.0}; };
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), nonzero);
  if (first == coeffs_.end()) {
    coeffs_.clear();
    lo_ = 0;
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), nonzero).base();
  lo_ += static_cast<int>(first - coeffs_.begin());
  coeffs_ = std::vector<cplx>(first, last);
}

cplx LaurentPolynomial::operator[](int degree) const {
  if (degree < lo_ || degree > hi()) return {0.0, 0.0};
  return coeffs_[static_cast<std::size_t>(degree - lo_)];
}

double LaurentPolynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double LaurentPolynomial::max_abs_imag() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c.imag()));
  return m;
}

bool LaurentPolynomial::is_real(double rel_tol) const {
  return max_abs_imag() <= rel_tol * max_abs_coeff();
}

std::vector<double> LaurentPolynomial::real_coeffs() const {
  std::vector<double> out(coeffs_.size());
  std::transform(coeffs_.begin(), coeffs_.end(), out.begin(), [](cplx c) { return c.real(); });
  return out;
}

cplx LaurentPolynomial::operator()(cplx z) const { return eval(*this, z); }

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& rhs) {
  *this = add(*this, rhs);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& rhs) {
  *this = add(*this, rhs * cplx{-1.0, 0.0});
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& rhs) {
  *this = mul(*this, rhs);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  normalize();
  return *this;
}

cplx integer_power(cplx z, int n) {
  if (n < 0) {
    if (z == cplx{0.0, 0.0}) throw std::domain_error("integer_power: zero base with negative exponent");
    return cplx{1.0, 0.0} / integer_power(z, -n);
  }
  cplx result{1.0, 0.0};
  cplx base = z;
  for (unsigned e = static_cast<unsigned>(n); e != 0; e >>= 1) {
    if (e & 1u) result *= base;
    base *= base;
  }
  return result;
}

cplx eval(const LaurentPolynomial& p, cplx z) {
  if (z == cplx{0.0, 0.0}) {
    if (p.lo() < 0) throw std::domain_error("eval: negative powers evaluated at z = 0");
    return p[0];
  }
  const auto c = p.coeffs();
  cplx acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc * integer_power(z, p.lo());
}

LaurentPolynomial derivative(const LaurentPolynomial& p, int r) {
  if (r < 0) throw std::invalid_argument("derivative: negative order");
  if (r == 0 || p.is_zero()) return p;
  const auto c = p.coeffs();
  std::vector<cplx> out(c.size());
  for (std::size_t m = 0; m < c.size(); ++m) {
    const int j = p.lo() + static_cast<int>(m);
    double factor = 1.0;
    for (int i = 0; i < r; ++i) factor *= static_cast<double>(j - i);
    out[m] = c[m] * factor;
  }
  return {p.lo() - r, std::move(out)};
}

LaurentPolynomial mul(const LaurentPolynomial& p, const LaurentPolynomial& q) {
  if (p.is_zero() || q.is_zero()) return {};
  const auto a = p.coeffs();
  const auto b = q.coeffs();
  std::vector<cplx> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return {p.lo() + q.lo(), std::move(out)};
}

LaurentPolynomial add(const LaurentPolynomial& p, const LaurentPolynomial& q) {
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  const int lo = std::min(p.lo(), q.lo());
  const int hi = std::max(p.hi(), q.hi());
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo + 1));
  for (int d = lo; d <= hi; ++d) out[static_cast<std::size_t>(d - lo)] = p[d] + q[d];
  return {lo, std::move(out)};
}

LaurentPolynomial power(const LaurentPolynomial& p, int n) {
  if (n < 0) throw std::invalid_argument("power: negative exponent");
  LaurentPolynomial result = LaurentPolynomial::constant(1.0);
  for (int i = 0; i < n; ++i) result = mul(result, p);
  return result;
}

LaurentPolynomial shift(const LaurentPolynomial& p, int n) {
  if (p.is_zero()) return p;
  return {p.lo() + n, std::vector<cplx>(p.coeffs().begin(), p.coeffs().end())};
}

DivisionResult divide_with_remainder(const LaurentPolynomial& p, const LaurentPolynomial& d) {
  if (d.is_zero()) throw std::domain_error("divide_with_remainder: division by the zero polynomial");
  if (p.is_zero()) return {};

  // Work on polynomial parts P = p / z^lo(p), D = d / z^lo(d).
  std::vector<cplx> rem(p.coeffs().begin(), p.coeffs().end());
  const auto den = d.coeffs();
  const std::size_t dp = rem.size() - 1;
  const std::size_t dd = den.size() - 1;
  if (dp < dd) return {LaurentPolynomial{}, p};

  std::vector<cplx> quot(dp - dd + 1);
  const cplx lead = den.back();
  for (std::size_t s = dp - dd + 1; s-- > 0;) {
    const cplx q = rem[s + dd] / lead;
    quot[s] = q;
    for (std::size_t i = 0; i <= dd; ++i) rem[s + i] -= q * den[i];
    rem[s + dd] = 0.0;  // eliminated exactly by construction
  }
  rem.resize(dd);
  return {LaurentPolynomial{p.lo() - d.lo(), std::move(quot)}, LaurentPolynomial{p.lo(), std::move(rem)}};
}

double max_coeff_distance(const LaurentPolynomial& p, const LaurentPolynomial& q) {
  if (p.is_zero() && q.is_zero()) return 0.0;
  const int lo = p.is_zero() ? q.lo() : (q.is_zero() ? p.lo() : std::min(p.lo(), q.lo()));
  const int hi = p.is_zero() ? q.hi() : (q.is_zero() ? p.hi() : std::max(p.hi(), q.hi()));
  double m = 0.0;
  for (int deg = lo; deg <= hi; ++deg) m = std::max(m, std::abs(p[deg] - q[deg]));
  return m;
}

}  // namespace expsubdiv
