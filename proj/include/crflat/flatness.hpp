#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "crflat/hypersurface.hpp"
#include "crflat/minors.hpp"
#include "crflat/pde_system.hpp"

namespace crflat {

/// Location of the first nonzero coefficient of a tensor.
struct Witness {
  std::array<int, 4> component{};  // (k1, k2, l1, l2), zero-based
  Monomial monomial;
  std::string monomial_text;
  GaussianRational coefficient;
};

/// Fourth-order array W_{k1 k2 l1 l2}, symmetric in (k1, k2) and (l1, l2);
/// only k1 <= k2, l1 <= l2 is stored. Indices are zero-based.
class FlatnessTensor {
 public:
  FlatnessTensor(int n, std::vector<Series> packed_components);

  int n() const { return n_; }
  /// Guaranteed order of every component.
  int certified_order() const { return certified_order_; }
  const Series& operator()(int k1, int k2, int l1, int l2) const;

  /// Smallest (k1 <= k2, l1 <= l2) component, then smallest monomial, with a
  /// nonzero coefficient of degree <= certified_order.
  std::optional<Witness> first_nonzero() const;
  bool vanishes() const { return !first_nonzero().has_value(); }

  /// Componentwise product with a common series factor.
  FlatnessTensor scaled(const Series& factor) const;

  static std::size_t slot(int k1, int k2, int l1, int l2, int n);

 private:
  int n_;
  int certified_order_;
  std::vector<Series> components_;
};

/// Applies the trace adjustment of the flatness system to a second-derivative
/// array S(k1, k2, l1, l2) (symmetric in both index pairs):
///
///   W = S - 1/(n+2) [d_{k1 l1} T_{k2 l2} + d_{k1 l2} T_{k2 l1}
///                    + d_{k2 l1} T_{k1 l2} + d_{k2 l2} T_{k1 l1}]
///         + 1/((n+1)(n+2)) [d_{k1 l1} d_{k2 l2} + d_{k2 l1} d_{k1 l2}] U
///
/// with T_{k l} = sum_m S(m, k, m, l) and U = sum_{m, m'} S(m, m', m, m').
FlatnessTensor trace_adjust(int n, const std::function<const Series&(int, int, int, int)>& s);

/// Flatness tensor of a general second-order system (second y_x-derivatives
/// of F, trace-adjusted).
FlatnessTensor hachtroudi_tensor(const PdeSystem& s);

/// All Cramer minors of the Levi determinant of M. Throws LeviDegenerate.
MinorFamily minors(const HypersurfaceModel& m);

/// Curvature expressed directly through the fourth-order jet of Theta,
/// denominator-free (scaled by Delta^3). `order` caps the Theta order used;
/// the certified order is (that order) - 4.
/// Throws LeviDegenerate, InsufficientOrder.
FlatnessTensor main_theorem_tensor(const HypersurfaceModel& m, int order = Series::kExact);

struct CrossCheckReport {
  bool agree = false;
  int certified_order = 0;
  FlatnessTensor direct;       // main_theorem_tensor
  FlatnessTensor transferred;  // Delta^3 * pullback of hachtroudi_tensor(Phi)
  std::optional<Witness> disagreement;
};

/// Compares main_theorem_tensor with the flatness tensor of the associated
/// system, the latter differentiated in (x, y, y_x) and pulled back along
/// y = Theta, y_x = Theta_z, then scaled by Delta^3.
CrossCheckReport cross_check(const HypersurfaceModel& m, int order = Series::kExact);

struct Verdict {
  enum class Kind { VanishesToOrder, NonVanishing };
  Kind kind = Kind::VanishesToOrder;
  int certified_order = 0;
  std::optional<Witness> witness;
};

/// Vanishing of main_theorem_tensor up to the certified jet order; never an
/// unconditional claim. Throws LeviDegenerate, InsufficientOrder.
Verdict is_pseudospherical(const HypersurfaceModel& m, int order = Series::kExact);

}  // namespace crflat
