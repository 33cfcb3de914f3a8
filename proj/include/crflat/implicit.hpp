#pragma once

#include <span>
#include <string>
#include <vector>

#include "crflat/series.hpp"

namespace crflat {

/// Solution u(p, t) of G_i(p, u) = t_i.
struct ImplicitSolution {
  /// Parameters (system variables that are not unknowns, in order), then targets.
  Context context;
  /// One series per unknown, in the order the unknowns were given.
  std::vector<Series> values;
  int order = 0;
};

/// Formal implicit function theorem.
///
/// `system` holds k series over one context containing the k `unknowns`;
/// every G_i must vanish at the origin and dG/du(0) must be invertible.
/// The solution is built degree by degree: with J = dG/du(0) and
/// G = J u + R(p, u), each pass solves u = J^{-1} (t - R(p, u)) one degree
/// further. Guaranteed order is the minimum order of the system.
///
/// Throws Error(SingularJacobian) for a singular linear part.
ImplicitSolution solve_implicit(std::span<const Series> system,
                                std::span<const std::string> unknowns,
                                std::span<const std::string> targets);

}  // namespace crflat
