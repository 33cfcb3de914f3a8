#pragma once

#include <vector>

#include "crflat/series.hpp"
#include "crflat/series_matrix.hpp"

namespace crflat {

/// Cramer minors of the Jacobian-like determinant built from a generating
/// function Q over (n "x" variables, n+1 parameters t^1..t^{n+1}):
///
///   delta                = det[ Q_{t^mu} ; Q_{x^k t^mu} ]
///   unit(mu, l)          = delta with column mu replaced by the unit column
///                          e_{1+l} (rows counted from 0)
///   second(mu, nu, tau)  = delta with column tau replaced by
///                          (Q_{t^mu t^nu}, Q_{x^1 t^mu t^nu}, ..., Q_{x^n t^mu t^nu})
///
/// All indices are zero-based: mu, nu, tau in [0, n], l in [0, n).
class MinorFamily {
 public:
  /// Entries are truncated to `cap` before any determinant is taken.
  MinorFamily(const Series& q, int n, int cap = Series::kExact);

  int n() const { return n_; }
  const Series& delta() const { return delta_; }
  const SeriesMatrix& matrix() const { return matrix_; }
  const Series& unit(int mu, int l) const { return unit_[mu * n_ + l]; }
  const Series& second(int mu, int nu, int tau) const;

 private:
  int n_;
  SeriesMatrix matrix_;
  Series delta_;
  std::vector<Series> unit_;
  std::vector<Series> second_;  // mu <= nu, packed, times (n+1) tau
};

}  // namespace crflat
