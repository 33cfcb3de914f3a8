#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crflat/series.hpp"
#include "crflat/series_matrix.hpp"

namespace crflat {

/// Real-analytic hypersurface M in C^{n+1} through the origin, given by its
/// complex defining function w = Theta(z, zb, wb) over contexts::theta(n).
///
/// Only make_model (and the constructions built on it) produce models, so
/// every instance is normalized (Theta = -wb + O(2)) and satisfies both
/// reality identities to its order.
class HypersurfaceModel {
 public:
  int n() const { return n_; }
  int order() const { return theta_.order(); }
  const Series& theta() const { return theta_; }

 private:
  HypersurfaceModel(int n, Series theta) : n_(n), theta_(std::move(theta)) {}
  friend HypersurfaceModel make_model(int n, const Series& theta, int order);

  int n_;
  Series theta_;
};

/// Validates and wraps Theta, truncated to `order`.
///
/// Throws UnsupportedDimension (n < 2), ContextMismatch, NormalizationError
/// (linear part is not -wb), RealityError (names the failing monomial).
HypersurfaceModel make_model(int n, const Series& theta, int order);

/// Theta-bar(zb, z, w): coefficients conjugated, z_k <-> zb_k swapped, wb
/// renamed w. Maps contexts::theta(n) to contexts::theta_conjugate(n) and
/// back, so applying it twice is the identity.
Series conjugate_theta(const Series& theta, int n);
Series conjugate_theta(const HypersurfaceModel& m);

struct RealityReport {
  bool pass = true;
  int checked_order = 0;
  /// 1: wb = Theta-bar(zb, z, Theta); 2: w = Theta(z, zb, Theta-bar).
  int failed_identity = 0;
  std::string monomial;
  GaussianRational residual;
};

/// Checks both reality identities of Theta to its order.
RealityReport check_reality(const Series& theta, int n);
RealityReport check_reality(const HypersurfaceModel& m);

/// Theta from a real graph u = phi(x, y, v) with z = x + i y, w = u + i v,
/// phi over contexts::graph(n). Throws NonReal, NormalizationError.
HypersurfaceModel from_graph(const Series& phi, int n, int order);

/// Rows: (Theta_{tb_mu}), then (Theta_{z_k tb_mu}) for k = 1..n; columns
/// mu over (z1b..znb, wb). Works positionally for any context laid out as
/// (n "x" variables, n+1 parameters), e.g. contexts::fundamental(n).
SeriesMatrix levi_matrix(const Series& theta, int n);

struct LeviData {
  Series delta;
  GaussianRational delta_at_origin;
  int positive = 0;
  int negative = 0;
};

/// Delta = det(levi_matrix) and the Levi signature from exact congruence
/// diagonalization of [Theta_{z_j zb_k}(0)]. Throws LeviDegenerate.
LeviData levi(const HypersurfaceModel& m);

/// The Hermitian Levi matrix at the origin.
GaussianMatrix levi_form(const HypersurfaceModel& m);

/// Image of M under (z, w) -> (zmap(z, w), wmap(z, w)); map series live in
/// contexts::holomorphic(n), fix the origin and have invertible linear part.
/// Throws NonInvertibleMap, ImageNotGraphable.
HypersurfaceModel apply_biholomorphism(const HypersurfaceModel& m,
                                       const std::vector<Series>& zmap,
                                       const Series& wmap);

}  // namespace crflat
