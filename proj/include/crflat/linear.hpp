#pragma once

#include <optional>

#include "crflat/gaussian.hpp"

namespace crflat {

/// Gauss-Jordan inverse over Q(i); nullopt when singular.
std::optional<GaussianMatrix> exact_inverse(const GaussianMatrix& m);

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

bool is_hermitian(const GaussianMatrix& h);

/// Sylvester inertia of a Hermitian matrix by exact congruence
/// diagonalization (symmetric elimination, no eigenvalues).
/// Throws Error(DimensionMismatch) when h is not square Hermitian.
Inertia hermitian_inertia(const GaussianMatrix& h);

}  // namespace crflat
