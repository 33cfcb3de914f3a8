#pragma once

#include <bit>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "crflat/errors.hpp"
#include "crflat/gaussian.hpp"
#include "crflat/series.hpp"

namespace crflat {

/// Dense grid of series over one shared context.
class SeriesMatrix {
 public:
  using Index = Eigen::Index;

  SeriesMatrix(Context ctx, Index rows, Index cols)
      : ctx_(std::move(ctx)),
        rows_(rows),
        cols_(cols),
        entries_(static_cast<std::size_t>(rows * cols), Series(ctx_, Series::kExact)) {}

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const Context& context() const { return ctx_; }

  const Series& operator()(Index i, Index j) const { return entries_[i * cols_ + j]; }
  Series& operator()(Index i, Index j) { return entries_[i * cols_ + j]; }

  /// Smallest entry order.
  int order() const;

  /// Copy with column j replaced.
  SeriesMatrix with_column(Index j, const std::vector<Series>& column) const;

  /// Constant terms as an exact matrix.
  GaussianMatrix at_origin() const;

 private:
  Context ctx_;
  Index rows_;
  Index cols_;
  std::vector<Series> entries_;
};

inline GaussianRational zero_like(const GaussianRational&) { return {}; }
inline GaussianRational one_like(const GaussianRational&) { return 1; }
inline Series zero_like(const Series& s) { return Series(s.context(), Series::kExact); }
inline Series one_like(const Series& s) { return Series::constant(s.context(), 1); }

namespace detail {

// Laplace expansion along the top remaining row, memoized over the set of
// still-available columns: O(n 2^n) ring multiplications, no division.
template <typename Matrix, typename Scalar>
Scalar laplace(const Matrix& m, unsigned mask, int n,
               std::vector<std::optional<Scalar>>& memo) {
  if (memo[mask]) return *memo[mask];
  const int row = n - std::popcount(mask);
  Scalar acc = zero_like(m(0, 0));
  int position = 0;
  for (int c = 0; c < n; ++c) {
    if (!(mask & (1u << c))) continue;
    const auto& entry = m(row, c);
    if (!is_zero(entry)) {
      Scalar minor = laplace(m, mask & ~(1u << c), n, memo);
      if (!is_zero(minor)) {
        Scalar term = entry * minor;
        if (position % 2 == 0) {
          acc += term;
        } else {
          acc -= term;
        }
      }
    }
    ++position;
  }
  memo[mask] = acc;
  return acc;
}

}  // namespace detail

/// Exact determinant of a square matrix over any commutative ring scalar
/// (GaussianRational, Series).
template <typename Matrix>
auto determinant(const Matrix& m) -> std::decay_t<decltype(m(0, 0))> {
  using Scalar = std::decay_t<decltype(m(0, 0))>;
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  }
  const int n = static_cast<int>(m.rows());
  if (n == 0 || n > 20) {
    throw Error(ErrorCode::DimensionMismatch, "determinant size out of range");
  }
  std::vector<std::optional<Scalar>> memo(std::size_t{1} << n);
  memo[0] = one_like(m(0, 0));
  return detail::laplace<Matrix, Scalar>(m, (1u << n) - 1, n, memo);
}

namespace detail {

template <typename Matrix, typename Column>
Matrix replace_column(Matrix m, Eigen::Index j, const Column& col) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = col[i];
  return m;
}

}  // namespace detail

/// Quadratic determinant identity obtained by trading columns j1 < j2 of the
/// ground matrix against two external columns d and e:
///
///   |..d..e..| |..C_j1..C_j2..| = |..d..C_j2..| |..C_j1..e..|
///                                 - |..e..C_j2..| |..C_j1..d..|
///
/// Returns whether it holds exactly.
template <typename Matrix, typename Column>
bool plucker_check(const Matrix& ground, const Column& d, const Column& e,
                   Eigen::Index j1, Eigen::Index j2) {
  const auto n = ground.rows();
  if (ground.cols() != n || static_cast<Eigen::Index>(d.size()) != n ||
      static_cast<Eigen::Index>(e.size()) != n || !(0 <= j1 && j1 < j2 && j2 < n)) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent Plücker instance");
  }
  using detail::replace_column;
  const auto lhs = determinant(replace_column(replace_column(ground, j1, d), j2, e)) *
                   determinant(ground);
  const auto rhs =
      determinant(replace_column(ground, j1, d)) * determinant(replace_column(ground, j2, e)) -
      determinant(replace_column(ground, j1, e)) * determinant(replace_column(ground, j2, d));
  return lhs == rhs;
}

}  // namespace crflat
