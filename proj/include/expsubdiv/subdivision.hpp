#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "expsubdiv/laurent.hpp"
#include "expsubdiv/schemes.hpp"

namespace expsubdiv {

/// open: only outputs whose whole stencil lies inside the stored data are
/// kept, so each step loses points at both ends. closed: indices wrap
/// modulo the point count and every step doubles the count.
enum class Topology { open, closed };

/// Points f_i^(k) for global indices i = offset .. offset + size() - 1.
/// Slot m carries the parameter t = (offset + m + p) / 2^k.
class RefinedData {
 public:
  /// `coords` holds size()*dim values row by row. Throws std::invalid_argument
  /// for dim outside 1..3, an empty point set, or a ragged coordinate array.
  RefinedData(int level, long offset, int dim, std::vector<double> coords, double p = 0.0,
              Topology topology = Topology::open);

  /// Wraps scalar samples (dim = 1).
  static RefinedData scalar(std::span<const double> values, long offset = 0, double p = 0.0,
                            Topology topology = Topology::open);

  int level() const { return level_; }
  long offset() const { return offset_; }
  int dim() const { return dim_; }
  double p() const { return p_; }
  Topology topology() const { return topology_; }
  std::size_t size() const { return coords_.size() / static_cast<std::size_t>(dim_); }
  std::span<const double> coords() const { return coords_; }
  std::span<const double> point(std::size_t m) const;
  double parameter(std::size_t m) const;
  /// Global index of slot m.
  long index(std::size_t m) const { return offset_ + static_cast<long>(m); }

 private:
  int level_;
  long offset_;
  int dim_;
  double p_;
  Topology topology_;
  std::vector<double> coords_;
};

/// One step (S f)_i = sum_j a_{i-2j} f_j with global indices. Open data keeps
/// exactly the outputs i in [2*offset + hi - 1, 2*last + lo + 1]; closed data
/// produces 2n outputs starting at 2*offset. Throws std::domain_error for a
/// zero or non-real mask and when open data is too short for one stencil.
RefinedData refine_once(const LaurentPolynomial& mask, const RefinedData& data);

/// Applies symbol_at(0), ..., symbol_at(levels-1); element 0 of the result
/// is the input itself. Throws std::domain_error if open data runs out.
std::vector<RefinedData> refine_levels(const SymbolFamily& family, const RefinedData& data, int levels);

/// Piecewise-linear interpolant F^(k) at parameter t. Throws std::domain_error
/// when t lies outside [parameter(0), parameter(size()-1)].
std::vector<double> eval_piecewise_linear(const RefinedData& data, double t);

/// Writes `level,i,t,x[,y[,z]]` rows with 17 significant digits.
void write_csv(std::ostream& os, std::span<const RefinedData> levels);

}  // namespace expsubdiv
