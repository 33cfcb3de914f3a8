#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "crflat/hypersurface.hpp"
#include "crflat/series.hpp"

namespace crflat {

/// Complete second-order system y_{x^k1 x^k2} = F_{k1,k2}(x, y, y_x) over
/// contexts::jet(n). F is symmetric; each unordered pair is stored once.
/// Indices are zero-based.
class PdeSystem {
 public:
  /// Entries missing from `entries` are zero; (k1, k2) and (k2, k1) may not
  /// both be given.
  PdeSystem(int n, const std::map<std::pair<int, int>, Series>& entries, int order);

  int n() const { return n_; }
  const Context& context() const { return ctx_; }
  /// Smallest order over all entries.
  int order() const;
  const Series& f(int k1, int k2) const;

 private:
  int n_;
  Context ctx_;
  std::vector<Series> f_;
};

/// Q(x, a, b) over contexts::fundamental(n); the general solution of the
/// system it determines.
class FundamentalSolution {
 public:
  FundamentalSolution(int n, Series q);

  int n() const { return n_; }
  const Series& q() const { return q_; }
  /// Q = -b + sum_k x^k a^k + O(2).
  bool normalized() const;

 private:
  int n_;
  Series q_;
};

/// D_k G = G_{x^k} + y_{x^k} G_y + sum_l F_{k,l} G_{y_{x^l}}.
Series total_derivative(const PdeSystem& s, int k, const Series& g);

struct IntegrabilityFailure {
  int k1, k2, k3;  // D_{k3} F_{k1,k2} != D_{k2} F_{k1,k3}
  std::string monomial;
  GaussianRational residual;
};

struct IntegrabilityReport {
  bool pass = true;
  int checked_order = 0;
  std::vector<IntegrabilityFailure> failures;
};

/// Compatibility D_{k3}(F_{k1,k2}) = D_{k2}(F_{k1,k3}) for all index triples.
IntegrabilityReport check_complete_integrability(const PdeSystem& s);

/// Eliminates (a, b) from y = Q, y_{x^k} = Q_{x^k} and substitutes into
/// Q_{x^k1 x^k2}. Throws Error(RankCondition) when the elimination Jacobian
/// is singular at the origin.
PdeSystem recover_system_from_solution(const FundamentalSolution& q);

/// The associated system of M: recover_system_from_solution with
/// (x, a, b) := (z, zb, wb) and Q := Theta. Throws LeviDegenerate.
PdeSystem derive_associated_system(const HypersurfaceModel& m);

/// d^2 G / d y_{x^l1} d y_{x^l2} in (x, a, b) coordinates, where T(x, a, b)
/// is the pullback of G(x, y, y_x) under y = Q, y_x = Q_x:
///
///   box^{-3} sum_{mu,nu} U^mu_{l1} U^nu_{l2} ( box T_{mu nu}
///                                              - sum_tau V^tau_{mu nu} T_tau )
///
/// with the Cramer minors U, V of MinorFamily. Throws Error(RankCondition)
/// when box(0) = 0.
Series jet_transfer_second(const FundamentalSolution& q, const Series& t, int l1, int l2);

}  // namespace crflat
