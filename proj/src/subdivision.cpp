#include "expsubdiv/subdivision.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

namespace expsubdiv {

RefinedData::RefinedData(int level, long offset, int dim, std::vector<double> coords, double p,
                         Topology topology)
    : level_(level), offset_(offset), dim_(dim), p_(p), topology_(topology), coords_(std::move(coords)) {
  if (dim_ < 1 || dim_ > 3) throw std::invalid_argument("RefinedData: dimension must be 1, 2 or 3");
  if (coords_.empty()) throw std::invalid_argument("RefinedData: no points");
  if (coords_.size() % static_cast<std::size_t>(dim_) != 0)
    throw std::invalid_argument("RefinedData: coordinate count is not a multiple of the dimension");
  if (level_ < 0) throw std::invalid_argument("RefinedData: negative level");
}

RefinedData RefinedData::scalar(std::span<const double> values, long offset, double p, Topology topology) {
  return {0, offset, 1, std::vector<double>(values.begin(), values.end()), p, topology};
}

std::span<const double> RefinedData::point(std::size_t m) const {
  return std::span<const double>(coords_).subspan(m * static_cast<std::size_t>(dim_),
                                                  static_cast<std::size_t>(dim_));
}

double RefinedData::parameter(std::size_t m) const {
  return (static_cast<double>(index(m)) + p_) / std::ldexp(1.0, level_);
}

namespace {

long floor_div2(long a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

long positive_mod(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

RefinedData refine_once(const LaurentPolynomial& mask, const RefinedData& data) {
  if (mask.is_zero()) throw std::domain_error("refine_once: zero mask");
  if (!mask.is_real()) throw std::domain_error("refine_once: mask has non-negligible imaginary parts");

  const std::vector<double> a = mask.real_coeffs();
  const long lo = mask.lo();
  const long hi = mask.hi();
  const long n = static_cast<long>(data.size());
  const long first = data.offset();
  const long last = first + n - 1;
  const std::size_t dim = static_cast<std::size_t>(data.dim());
  const auto in = data.coords();

  long out_first = 0;
  long out_last = 0;
  if (data.topology() == Topology::closed) {
    out_first = 2 * first;
    out_last = 2 * first + 2 * n - 1;
  } else {
    out_first = 2 * first + hi - 1;
    out_last = 2 * last + lo + 1;
    if (out_last < out_first)
      throw std::domain_error("refine_once: " + std::to_string(n) + " points cannot hold one full stencil of width " +
                              std::to_string(mask.width()));
  }

  std::vector<double> out(static_cast<std::size_t>(out_last - out_first + 1) * dim, 0.0);
  for (long i = out_first; i <= out_last; ++i) {
    double* dst = out.data() + static_cast<std::size_t>(i - out_first) * dim;
    // j runs over all indices with lo <= i - 2j <= hi.
    for (long j = floor_div2(i - lo); 2 * j >= i - hi; --j) {
      const double w = a[static_cast<std::size_t>(i - 2 * j - lo)];
      const long slot = data.topology() == Topology::closed ? positive_mod(j - first, n) : j - first;
      const double* src = in.data() + static_cast<std::size_t>(slot) * dim;
      for (std::size_t c = 0; c < dim; ++c) dst[c] += w * src[c];
    }
  }
  return {data.level() + 1, out_first, data.dim(), std::move(out), data.p(), data.topology()};
}

std::vector<RefinedData> refine_levels(const SymbolFamily& family, const RefinedData& data, int levels) {
  if (levels < 0) throw std::invalid_argument("refine_levels: negative level count");
  std::vector<RefinedData> out;
  out.reserve(static_cast<std::size_t>(levels) + 1);
  out.push_back(data);
  for (int s = 0; s < levels; ++s) {
    const RefinedData& cur = out.back();
    out.push_back(refine_once(family.symbol_at(cur.level()), cur));
  }
  return out;
}

std::vector<double> eval_piecewise_linear(const RefinedData& data, double t) {
  const std::size_t n = data.size();
  const double t0 = data.parameter(0);
  const double t1 = data.parameter(n - 1);
  if (!(t >= t0 && t <= t1)) throw std::domain_error("eval_piecewise_linear: parameter outside the data range");

  const auto dim = static_cast<std::size_t>(data.dim());
  if (n == 1) {
    auto p = data.point(0);
    return {p.begin(), p.end()};
  }
  const double h = std::ldexp(1.0, -data.level());
  std::size_t m = static_cast<std::size_t>(std::floor((t - t0) / h));
  if (m >= n - 1) m = n - 2;
  const double u = (t - data.parameter(m)) / h;
  const auto a = data.point(m);
  const auto b = data.point(m + 1);
  std::vector<double> out(dim);
  for (std::size_t c = 0; c < dim; ++c) out[c] = u == 0.0 ? a[c] : (u == 1.0 ? b[c] : (1.0 - u) * a[c] + u * b[c]);
  return out;
}

void write_csv(std::ostream& os, std::span<const RefinedData> levels) {
  if (levels.empty()) return;
  static constexpr const char* axes[] = {"x", "y", "z"};
  os << "level,i,t";
  for (int c = 0; c < levels.front().dim(); ++c) os << ',' << axes[c];
  os << '\n';
  char buf[64];
  for (const auto& data : levels) {
    for (std::size_t m = 0; m < data.size(); ++m) {
      os << data.level() << ',' << data.index(m);
      std::snprintf(buf, sizeof buf, ",%.17g", data.parameter(m));
      os << buf;
      for (double v : data.point(m)) {
        std::snprintf(buf, sizeof buf, ",%.17g", v);
        os << buf;
      }
      os << '\n';
    }
  }
}

}  // namespace expsubdiv
