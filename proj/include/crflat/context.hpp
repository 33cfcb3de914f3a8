#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crflat {

/// Ordered, duplicate-free list of variable names. Position in the list is
/// the position in every Monomial built over this context.
class VariableContext {
 public:
  explicit VariableContext(std::vector<std::string> names);

  std::size_t arity() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws Error(UnknownVariable) when absent.
  std::size_t index(std::string_view name) const;

  friend bool operator==(const VariableContext& a, const VariableContext& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
};

using Context = std::shared_ptr<const VariableContext>;

Context make_context(std::vector<std::string> names);

bool same_context(const Context& a, const Context& b);

/// Canonical contexts.
namespace contexts {

/// (z1..zn, z1b..znb, wb): home of Theta.
Context theta(int n);
/// (z1..zn, z1b..znb, w): home of the conjugate Theta-bar(zb, z, w).
Context theta_conjugate(int n);
/// (z1..zn, w): holomorphic coordinates, used for biholomorphisms.
Context holomorphic(int n);
/// (x1..xn, y, yx1..yxn): jet coordinates of a second-order system.
Context jet(int n);
/// (x1..xn, a1..an, b): fundamental-solution coordinates.
Context fundamental(int n);
/// (x1..xn, y1..yn, v): real graph coordinates, u = phi(x, y, v).
Context graph(int n);

}  // namespace contexts

}  // namespace crflat
