#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace expsubdiv {

using cplx = std::complex<double>;

/// Laurent polynomial sum_j c_j z^j with contiguous support [lo, hi].
///
/// Coefficients are stored densely starting at degree `lo`. Construction
/// trims exact zeros at both ends; nothing is trimmed by tolerance, so a
/// coefficient that is numerically tiny but nonzero stays part of the
/// support. The zero polynomial has no coefficients and lo() == 0.
class LaurentPolynomial {
 public:
  LaurentPolynomial() = default;
  LaurentPolynomial(int lo, std::vector<cplx> coeffs);
  LaurentPolynomial(int lo, std::initializer_list<double> real_coeffs);

  static LaurentPolynomial constant(cplx c);
  static LaurentPolynomial monomial(int degree, cplx c = 1.0);
  static LaurentPolynomial from_real(int lo, std::span<const double> coeffs);

  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(coeffs_.size()) - 1; }
  std::size_t width() const { return coeffs_.size(); }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const cplx> coeffs() const { return coeffs_; }

  /// Coefficient of z^degree, zero outside the support.
  cplx operator[](int degree) const;

  double max_abs_coeff() const;
  double max_abs_imag() const;
  /// True when every imaginary part is below rel_tol * max_abs_coeff().
  bool is_real(double rel_tol = 1e-12) const;
  std::vector<double> real_coeffs() const;

  cplx operator()(cplx z) const;

  LaurentPolynomial& operator+=(const LaurentPolynomial& rhs);
  LaurentPolynomial& operator-=(const LaurentPolynomial& rhs);
  LaurentPolynomial& operator*=(const LaurentPolynomial& rhs);
  LaurentPolynomial& operator*=(cplx s);

  friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

 private:
  void normalize();

  int lo_ = 0;
  std::vector<cplx> coeffs_;
};

/// z^n for integer n by repeated squaring. Throws std::domain_error for z == 0, n < 0.
cplx integer_power(cplx z, int n);

/// Horner evaluation of the polynomial part times z^lo. Throws std::domain_error
/// at z == 0 when the support has negative degrees.
cplx eval(const LaurentPolynomial& p, cplx z);

/// Formal r-th derivative; the coefficient of z^(j-r) is c_j * j (j-1) ... (j-r+1).
LaurentPolynomial derivative(const LaurentPolynomial& p, int r);

LaurentPolynomial mul(const LaurentPolynomial& p, const LaurentPolynomial& q);
LaurentPolynomial add(const LaurentPolynomial& p, const LaurentPolynomial& q);
LaurentPolynomial power(const LaurentPolynomial& p, int n);

/// Multiplies by z^n.
LaurentPolynomial shift(const LaurentPolynomial& p, int n);

struct DivisionResult {
  LaurentPolynomial quotient;
  LaurentPolynomial remainder;
};

/// Long division of the polynomial parts: p = quotient * d + remainder, where
/// the polynomial part of remainder (remainder / z^lo(p)) has degree below
/// that of d's polynomial part. Throws std::domain_error if d is zero.
DivisionResult divide_with_remainder(const LaurentPolynomial& p, const LaurentPolynomial& d);

/// Max-norm distance between coefficient sequences aligned by degree.
double max_coeff_distance(const LaurentPolynomial& p, const LaurentPolynomial& q);

inline LaurentPolynomial operator+(LaurentPolynomial p, const LaurentPolynomial& q) { return p += q; }
inline LaurentPolynomial operator-(LaurentPolynomial p, const LaurentPolynomial& q) { return p -= q; }
inline LaurentPolynomial operator*(const LaurentPolynomial& p, const LaurentPolynomial& q) { return mul(p, q); }
inline LaurentPolynomial operator*(LaurentPolynomial p, cplx s) { return p *= s; }
inline LaurentPolynomial operator*(cplx s, LaurentPolynomial p) { return p *= s; }

}  // namespace expsubdiv
