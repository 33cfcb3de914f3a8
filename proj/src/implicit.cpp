#include "crflat/implicit.hpp"

#include <algorithm>

#include "crflat/errors.hpp"
#include "crflat/linear.hpp"

namespace crflat {

ImplicitSolution solve_implicit(std::span<const Series> system,
                                std::span<const std::string> unknowns,
                                std::span<const std::string> targets) {
  const std::size_t k = system.size();
  if (k == 0 || unknowns.size() != k || targets.size() != k) {
    throw Error(ErrorCode::DimensionMismatch,
                "implicit solve needs as many equations, unknowns and targets");
  }
  const Context& in = system[0].context();
  int order = Series::kExact;
  for (const auto& g : system) {
    if (!same_context(g.context(), in)) {
      throw Error(ErrorCode::ContextMismatch, "equations live in different contexts");
    }
    if (!g.constant_term().is_zero()) {
      throw Error(ErrorCode::NonAdmissibleComposition,
                  "equation does not vanish at the origin");
    }
    order = std::min(order, g.order());
  }
  if (order >= Series::kExact) {
    throw Error(ErrorCode::InsufficientOrder,
                "implicit solve of exact equations needs a truncation order");
  }

  std::vector<std::size_t> unknown_index;
  for (const auto& u : unknowns) unknown_index.push_back(in->index(u));

  std::vector<std::string> out_names;
  for (std::size_t v = 0; v < in->arity(); ++v) {
    if (std::find(unknown_index.begin(), unknown_index.end(), v) == unknown_index.end()) {
      out_names.push_back(in->name(v));
    }
  }
  for (const auto& t : targets) {
    if (in->find(t)) {
      throw Error(ErrorCode::ContextMismatch,
                  "target '" + t + "' clashes with a system variable");
    }
    out_names.push_back(t);
  }
  Context out = make_context(std::move(out_names));

  GaussianMatrix jac(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      jac(i, j) = system[i].coefficient(Monomial::unit(unknown_index[j]));
    }
  }
  auto jac_inv = exact_inverse(jac);
  if (!jac_inv) {
    throw Error(ErrorCode::SingularJacobian, "Jacobian in the unknowns is singular at the origin");
  }

  // R_i = G_i - sum_j J_ij u_j has no part linear in u alone.
  std::vector<Series> remainder;
  for (std::size_t i = 0; i < k; ++i) {
    Series r = system[i];
    for (std::size_t j = 0; j < k; ++j) {
      if (!jac(i, j).is_zero()) r -= jac(i, j) * Series::variable(in, unknowns[j]);
    }
    remainder.push_back(std::move(r));
  }

  std::vector<Series> target_vars;
  for (const auto& t : targets) target_vars.push_back(Series::variable(out, t));

  std::vector<Series> images;
  std::vector<std::size_t> image_slot(in->arity(), k);
  for (std::size_t v = 0; v < in->arity(); ++v) {
    auto it = std::find(unknown_index.begin(), unknown_index.end(), v);
    if (it != unknown_index.end()) {
      image_slot[v] = static_cast<std::size_t>(it - unknown_index.begin());
      images.push_back(Series(out, Series::kExact));
    } else {
      images.push_back(Series::variable(out, in->name(v)));
    }
  }

  std::vector<Series> u(k, Series(out, 0));
  for (int degree = 1; degree <= order; ++degree) {
    // u is exact through degree-1; R(p, u) is then exact through degree.
    for (std::size_t v = 0; v < in->arity(); ++v) {
      if (image_slot[v] < k) {
        images[v] = Series::from_terms(out, degree, u[image_slot[v]].terms());
      }
    }
    std::vector<Series> rhs;
    for (std::size_t i = 0; i < k; ++i) {
      Series r = substitute(remainder[i].truncated(degree), out, images);
      rhs.push_back(target_vars[i].truncated(degree) - r);
    }
    for (std::size_t j = 0; j < k; ++j) {
      Series next(out, degree);
      for (std::size_t i = 0; i < k; ++i) {
        if (!(*jac_inv)(j, i).is_zero()) next += (*jac_inv)(j, i) * rhs[i];
      }
      u[j] = std::move(next);
    }
  }
  return {out, std::move(u), order};
}

}  // namespace crflat
