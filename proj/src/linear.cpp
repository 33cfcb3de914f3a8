#include "crflat/linear.hpp"

#include "crflat/errors.hpp"

namespace crflat {

std::optional<GaussianMatrix> exact_inverse(const GaussianMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  }
  const Eigen::Index n = m.rows();
  GaussianMatrix a = m;
  GaussianMatrix inv = GaussianMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    while (p < n && a(p, k).is_zero()) ++p;
    if (p == n) return std::nullopt;
    if (p != k) {
      a.row(p).swap(a.row(k));
      inv.row(p).swap(inv.row(k));
    }
    const GaussianRational pivot_inv = a(k, k).inverse();
    for (Eigen::Index j = 0; j < n; ++j) {
      a(k, j) *= pivot_inv;
      inv(k, j) *= pivot_inv;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == k || a(i, k).is_zero()) continue;
      const GaussianRational f = a(i, k);
      for (Eigen::Index j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

bool is_hermitian(const GaussianMatrix& h) {
  if (h.rows() != h.cols()) return false;
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = i; j < h.cols(); ++j) {
      if (h(i, j) != h(j, i).conj()) return false;
    }
  }
  return true;
}

namespace {

// a <- T^H a T for T = I + c e_q e_p^T: column p += c column q, row p += conj(c) row q.
void add_congruent(GaussianMatrix& a, Eigen::Index p, Eigen::Index q,
                   const GaussianRational& c) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index i = 0; i < n; ++i) a(i, p) += c * a(i, q);
  const GaussianRational cc = c.conj();
  for (Eigen::Index j = 0; j < n; ++j) a(p, j) += cc * a(q, j);
}

void swap_congruent(GaussianMatrix& a, Eigen::Index p, Eigen::Index q) {
  if (p == q) return;
  a.row(p).swap(a.row(q));
  a.col(p).swap(a.col(q));
}

}  // namespace

Inertia hermitian_inertia(const GaussianMatrix& h) {
  if (!is_hermitian(h)) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not square Hermitian");
  }
  GaussianMatrix a = h;
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = -1;
    for (Eigen::Index p = k; p < n && pivot < 0; ++p) {
      if (!a(p, p).is_zero()) pivot = p;
    }
    if (pivot < 0) {
      // Zero diagonal: manufacture a nonzero diagonal entry 2|a_pq|^2.
      for (Eigen::Index p = k; p < n && pivot < 0; ++p) {
        for (Eigen::Index q = k; q < n; ++q) {
          if (q != p && !a(p, q).is_zero()) {
            add_congruent(a, p, q, a(p, q).conj());
            pivot = p;
            break;
          }
        }
      }
      if (pivot < 0) break;  // remaining block is zero
    }
    swap_congruent(a, k, pivot);
    const GaussianRational d_inv = a(k, k).inverse();
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      const GaussianRational f = a(i, k) * d_inv;
      add_congruent(a, i, k, -f.conj());
    }
  }
  Inertia out;
  for (Eigen::Index k = 0; k < n; ++k) {
    const int s = sgn(a(k, k).real());
    if (s > 0) {
      ++out.positive;
    } else if (s < 0) {
      ++out.negative;
    } else {
      ++out.zero;
    }
  }
  return out;
}

}  // namespace crflat
