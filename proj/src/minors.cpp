#include "crflat/minors.hpp"

#include <algorithm>

#include "crflat/errors.hpp"
#include "crflat/hypersurface.hpp"

namespace crflat {

namespace {

int pair_index(int mu, int nu, int n) {
  if (mu > nu) std::swap(mu, nu);
  // row-major upper triangle of an (n+1) x (n+1) grid
  return mu * (n + 1) - mu * (mu - 1) / 2 + (nu - mu);
}

}  // namespace

MinorFamily::MinorFamily(const Series& q, int n, int cap)
    : n_(n), matrix_(levi_matrix(q, n)), delta_(q.context(), Series::kExact) {
  for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix_.cols(); ++j) {
      matrix_(i, j) = matrix_(i, j).truncated(cap);
    }
  }
  delta_ = determinant(matrix_);
  const Context& ctx = q.context();
  const int size = n + 1;

  unit_.reserve(size * n);
  for (int mu = 0; mu < size; ++mu) {
    for (int l = 0; l < n; ++l) {
      std::vector<Series> column(size, Series(ctx, Series::kExact));
      column[1 + l] = Series::constant(ctx, 1);
      unit_.push_back(determinant(matrix_.with_column(mu, column)));
    }
  }

  second_.resize(static_cast<std::size_t>(size * (size + 1) / 2 * size), Series(ctx, 0));
  for (int mu = 0; mu < size; ++mu) {
    const Series q_mu = partial(q, static_cast<std::size_t>(n + mu));
    for (int nu = mu; nu < size; ++nu) {
      const Series q_mu_nu = partial(q_mu, static_cast<std::size_t>(n + nu));
      std::vector<Series> column;
      column.push_back(q_mu_nu.truncated(cap));
      for (int k = 0; k < n; ++k) {
        column.push_back(partial(q_mu_nu, static_cast<std::size_t>(k)).truncated(cap));
      }
      for (int tau = 0; tau < size; ++tau) {
        second_[pair_index(mu, nu, n) * size + tau] =
            determinant(matrix_.with_column(tau, column));
      }
    }
  }
}

const Series& MinorFamily::second(int mu, int nu, int tau) const {
  return second_[pair_index(mu, nu, n_) * (n_ + 1) + tau];
}

}  // namespace crflat
