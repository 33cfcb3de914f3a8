#pragma once

#include <random>
#include <string>
#include <vector>

#include "crflat/context.hpp"
#include "crflat/gaussian.hpp"
#include "crflat/hypersurface.hpp"
#include "crflat/linear.hpp"
#include "crflat/pde_system.hpp"
#include "crflat/series.hpp"

namespace crflat::testing {

// Deterministic generators for property tests. Every helper takes the engine
// explicitly so a failing draw can be replayed from its seed.
using Engine = std::mt19937_64;

inline int uniform(Engine& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline GaussianRational small_rational(Engine& rng) {
  const int num = uniform(rng, -4, 4);
  const int den = uniform(rng, 1, 3);
  return GaussianRational(Rational(num, den));
}

inline GaussianRational small_gaussian(Engine& rng) {
  GaussianRational re = small_rational(rng);
  GaussianRational im = small_rational(rng);
  return re + im * GaussianRational::i();
}

/// Coefficients from {0, +-1, +-1/2, +-i/2}.
inline GaussianRational perturbation_coefficient(Engine& rng, bool real_only) {
  static const GaussianRational half(Rational(1, 2));
  switch (uniform(rng, 0, real_only ? 4 : 6)) {
    case 0: return GaussianRational(0);
    case 1: return GaussianRational(1);
    case 2: return GaussianRational(-1);
    case 3: return half;
    case 4: return -half;
    case 5: return half * GaussianRational::i();
    default: return -(half * GaussianRational::i());
  }
}

inline Monomial random_monomial(Engine& rng, std::size_t arity, int max_degree) {
  Monomial m;
  const int degree = uniform(rng, 0, max_degree);
  for (int d = 0; d < degree; ++d) {
    m = m * Monomial::unit(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(arity) - 1)));
  }
  return m;
}

/// Sparse polynomial with up to `terms` terms of degree <= max_degree.
inline Series random_series(Engine& rng, const Context& ctx, int order, int max_degree,
                            int terms = 5) {
  std::vector<Term> out;
  const int count = uniform(rng, 0, terms);
  for (int t = 0; t < count; ++t) {
    out.push_back({random_monomial(rng, ctx->arity(), max_degree), small_gaussian(rng)});
  }
  return Series::from_terms(ctx, order, std::move(out));
}

inline GaussianMatrix random_matrix(Engine& rng, int n) {
  GaussianMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = small_gaussian(rng);
  }
  return m;
}

inline GaussianMatrix random_invertible(Engine& rng, int n) {
  for (;;) {
    GaussianMatrix m = random_matrix(rng, n);
    if (exact_inverse(m)) return m;
  }
}

/// Monomial z^alpha zb^beta in the theta context of dimension n.
inline Monomial zz_monomial(const std::vector<int>& alpha, const std::vector<int>& beta, int n) {
  Monomial m;
  for (int k = 0; k < n; ++k) {
    for (int e = 0; e < alpha[k]; ++e) m = m * Monomial::unit(static_cast<std::size_t>(k));
    for (int e = 0; e < beta[k]; ++e) m = m * Monomial::unit(static_cast<std::size_t>(n + k));
  }
  return m;
}

inline void multi_indices(int n, int degree, std::vector<int>& cur, int k,
                          std::vector<std::vector<int>>& out) {
  if (k == n - 1) {
    cur[k] = degree;
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= degree; ++e) {
    cur[k] = e;
    multi_indices(n, degree - e, cur, k + 1, out);
  }
}

inline std::vector<std::vector<int>> multi_indices(int n, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  multi_indices(n, degree, cur, 0, out);
  return out;
}

/// -wb + sum eps_k z_k zb_k.
inline Series heisenberg(int n, const std::vector<int>& eps, int order) {
  const Context ctx = contexts::theta(n);
  std::vector<Term> terms{{Monomial::unit(static_cast<std::size_t>(2 * n)), GaussianRational(-1)}};
  for (int k = 0; k < n; ++k) {
    terms.push_back({Monomial::unit(static_cast<std::size_t>(k)) *
                         Monomial::unit(static_cast<std::size_t>(n + k)),
                     GaussianRational(eps[static_cast<std::size_t>(k)])});
  }
  return Series::from_terms(ctx, order, std::move(terms));
}

/// Heisenberg plus a Hermitian-symmetric P(z, zb) with terms of degree 2..3
/// (mixed degree-2 terms excluded so the Levi form stays the identity), so
/// the resulting rigid hypersurface satisfies the reality identities.
inline Series perturbed_heisenberg(Engine& rng, int n, int order, int max_terms = 6) {
  Series theta = heisenberg(n, std::vector<int>(static_cast<std::size_t>(n), 1), order);
  const Context ctx = theta.context();
  std::vector<std::pair<std::vector<int>, std::vector<int>>> shapes;
  for (int degree = 2; degree <= 3; ++degree) {
    for (int a = 0; a <= degree; ++a) {
      for (const auto& alpha : multi_indices(n, a)) {
        for (const auto& beta : multi_indices(n, degree - a)) {
          if (degree == 2 && a == 1) continue;
          if (alpha < beta) continue;  // choose one of each conjugate pair
          shapes.emplace_back(alpha, beta);
        }
      }
    }
  }
  std::vector<Term> terms;
  int picked = 0;
  while (picked < max_terms) {
    const auto& [alpha, beta] = shapes[static_cast<std::size_t>(
        uniform(rng, 0, static_cast<int>(shapes.size()) - 1))];
    const GaussianRational c = perturbation_coefficient(rng, alpha == beta);
    if (c.is_zero()) continue;
    terms.push_back({zz_monomial(alpha, beta, n), c});
    if (alpha != beta) terms.push_back({zz_monomial(beta, alpha, n), conj(c)});
    ++picked;
  }
  return theta + Series::from_terms(ctx, order, std::move(terms));
}

/// Real polynomial phi(x, y, v) of degree 2..max_degree.
inline Series random_real_graph(Engine& rng, int n, int order, int max_degree, int terms = 6) {
  const Context ctx = contexts::graph(n);
  std::vector<Term> out;
  while (static_cast<int>(out.size()) < terms) {
    Monomial m = random_monomial(rng, ctx->arity(), max_degree);
    if (m.degree() < 2) continue;
    out.push_back({m, small_rational(rng)});
  }
  return Series::from_terms(ctx, order, std::move(out));
}

/// Random second-order system: F_{k1 k2} polynomial in (x, y, yx), degree <= 3.
inline PdeSystem random_pde_system(Engine& rng, int n, int order) {
  const Context ctx = contexts::jet(n);
  std::map<std::pair<int, int>, Series> entries;
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = k1; k2 < n; ++k2) {
      entries.emplace(std::make_pair(k1, k2), random_series(rng, ctx, order, 3, 6));
    }
  }
  return PdeSystem(n, entries, order);
}

}  // namespace crflat::testing
