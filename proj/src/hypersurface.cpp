#include "crflat/hypersurface.hpp"

#include <algorithm>

#include "crflat/errors.hpp"
#include "crflat/implicit.hpp"
#include "crflat/linear.hpp"

namespace crflat {

namespace {

std::string var(std::string_view stem, int k, std::string_view suffix = "") {
  return std::string(stem) + std::to_string(k) + std::string(suffix);
}

// Conjugates coefficients and swaps the first two blocks of n variables; the
// last variable keeps its position. Result lives in `target`.
Series conjugate_swap(const Series& s, int n, const Context& target) {
  std::vector<Term> out;
  out.reserve(s.terms().size());
  for (const auto& t : s.terms()) {
    Monomial m;
    for (int k = 0; k < n; ++k) {
      m.set(k, t.exponent[n + k]);
      m.set(n + k, t.exponent[k]);
    }
    m.set(2 * n, t.exponent[2 * n]);
    out.push_back({m, t.coeff.conj()});
  }
  return Series::from_terms(target, s.order(), std::move(out));
}

// Coefficients conjugated, variables untouched.
Series conjugate_coefficients(const Series& s) {
  std::vector<Term> out(s.terms().begin(), s.terms().end());
  for (auto& t : out) t.coeff = t.coeff.conj();
  return Series::from_terms(s.context(), s.order(), std::move(out));
}

void check_normalization(const Series& theta, int n) {
  const auto& ctx = *theta.context();
  if (!theta.constant_term().is_zero()) {
    throw Error(ErrorCode::NormalizationError, "Theta has a nonzero constant term");
  }
  for (std::size_t v = 0; v < ctx.arity(); ++v) {
    const GaussianRational c = theta.coefficient(Monomial::unit(v));
    const GaussianRational expected = static_cast<int>(v) == 2 * n ? GaussianRational(-1) : 0;
    if (c != expected) {
      throw Error(ErrorCode::NormalizationError,
                  "linear part of Theta must be exactly -wb (coefficient of " + ctx.name(v) +
                      " is " + c.to_string() + ")");
    }
  }
}

}  // namespace

Series conjugate_theta(const Series& theta, int n) {
  const auto& names = theta.context()->names();
  if (same_context(theta.context(), contexts::theta(n))) {
    return conjugate_swap(theta, n, contexts::theta_conjugate(n));
  }
  if (same_context(theta.context(), contexts::theta_conjugate(n))) {
    return conjugate_swap(theta, n, contexts::theta(n));
  }
  throw Error(ErrorCode::ContextMismatch,
              "conjugation expects (z, zb, wb) or (z, zb, w) coordinates, got " +
                  std::to_string(names.size()) + " variables");
}

Series conjugate_theta(const HypersurfaceModel& m) { return conjugate_theta(m.theta(), m.n()); }

RealityReport check_reality(const Series& theta, int n) {
  const Context home = contexts::theta(n);
  const Context conj_home = contexts::theta_conjugate(n);
  if (!same_context(theta.context(), home)) {
    throw Error(ErrorCode::ContextMismatch, "Theta must live in (z, zb, wb)");
  }
  const Series theta_bar = conjugate_theta(theta, n);
  RealityReport report;
  report.checked_order = theta.order();

  auto record = [&](int identity, const std::optional<Term>& diff, const Context& ctx) {
    if (!diff || !report.pass) return;
    report.pass = false;
    report.failed_identity = identity;
    report.monomial = monomial_string(diff->exponent, *ctx);
    report.residual = diff->coeff;
  };

  // wb = Theta-bar(zb, z, Theta(z, zb, wb))
  Series first = substitute(theta_bar, home, std::map<std::string, Series>{{"w", theta}});
  record(1, first_difference(first, Series::variable(home, "wb"), theta.order()), home);

  // w = Theta(z, zb, Theta-bar(zb, z, w))
  Series second = substitute(theta, conj_home, std::map<std::string, Series>{{"wb", theta_bar}});
  record(2, first_difference(second, Series::variable(conj_home, "w"), theta.order()), conj_home);
  return report;
}

RealityReport check_reality(const HypersurfaceModel& m) { return check_reality(m.theta(), m.n()); }

HypersurfaceModel make_model(int n, const Series& theta, int order) {
  if (n < 2) {
    throw Error(ErrorCode::UnsupportedDimension, "CR dimension must be at least 2");
  }
  if (!same_context(theta.context(), contexts::theta(n))) {
    throw Error(ErrorCode::ContextMismatch, "Theta must live in (z1..zn, z1b..znb, wb)");
  }
  if (order < 1) throw Error(ErrorCode::InsufficientOrder, "model order must be at least 1");
  Series t = theta.truncated(order);
  if (t.is_exact()) t = Series::from_terms(t.context(), order, t.terms());
  check_normalization(t, n);
  RealityReport r = check_reality(t, n);
  if (!r.pass) {
    throw Error(ErrorCode::RealityError,
                "reality identity " + std::to_string(r.failed_identity) + " fails at monomial " +
                    r.monomial + " (residual " + r.residual.to_string() + ")");
  }
  return HypersurfaceModel(n, std::move(t));
}

HypersurfaceModel from_graph(const Series& phi, int n, int order) {
  if (n < 2) throw Error(ErrorCode::UnsupportedDimension, "CR dimension must be at least 2");
  if (!same_context(phi.context(), contexts::graph(n))) {
    throw Error(ErrorCode::ContextMismatch, "phi must live in (x1..xn, y1..yn, v)");
  }
  for (const auto& t : phi.terms()) {
    if (!t.coeff.is_real()) {
      throw Error(ErrorCode::NonReal, "phi has a non-real coefficient");
    }
    if (t.exponent.degree() < 2) {
      throw Error(ErrorCode::NormalizationError, "phi must vanish to second order");
    }
  }
  const int d = std::min(order, phi.order());

  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back(var("z", k));
  for (int k = 1; k <= n; ++k) names.push_back(var("z", k, "b"));
  names.push_back("wb");
  names.push_back("w");
  const Context work = make_context(std::move(names));

  const GaussianRational half(Rational(1, 2));
  const GaussianRational minus_half_i(Rational(0), Rational(-1, 2));
  std::vector<Series> images;
  for (int k = 1; k <= n; ++k) {
    images.push_back(half * (Series::variable(work, var("z", k)) +
                             Series::variable(work, var("z", k, "b"))));
  }
  for (int k = 1; k <= n; ++k) {
    images.push_back(minus_half_i * (Series::variable(work, var("z", k)) -
                                     Series::variable(work, var("z", k, "b"))));
  }
  images.push_back(minus_half_i *
                   (Series::variable(work, "w") - Series::variable(work, "wb")));

  // (w + wb)/2 = phi(...)  <=>  w + wb - 2 phi(...) = 0
  Series equation = Series::variable(work, "w") + Series::variable(work, "wb") -
                    GaussianRational(2) * substitute(phi.truncated(d), work, images);
  equation = equation.truncated(d);
  const std::vector<Series> system{equation};
  const std::vector<std::string> unknowns{"w"};
  const std::vector<std::string> targets{"t"};
  ImplicitSolution sol = solve_implicit(system, unknowns, targets);

  const Context home = contexts::theta(n);
  Series theta = substitute(sol.values[0], home,
                            std::map<std::string, Series>{{"t", Series(home, Series::kExact)}});
  return make_model(n, theta, d);
}

SeriesMatrix levi_matrix(const Series& theta, int n) {
  if (static_cast<int>(theta.context()->arity()) != 2 * n + 1) {
    throw Error(ErrorCode::DimensionMismatch, "expected 2n+1 variables");
  }
  SeriesMatrix m(theta.context(), n + 1, n + 1);
  for (int mu = 0; mu <= n; ++mu) {
    const Series d_mu = partial(theta, static_cast<std::size_t>(n + mu));
    m(0, mu) = d_mu;
    for (int k = 0; k < n; ++k) m(1 + k, mu) = partial(d_mu, static_cast<std::size_t>(k));
  }
  return m;
}

GaussianMatrix levi_form(const HypersurfaceModel& m) {
  const int n = m.n();
  GaussianMatrix h(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Monomial mono;
      mono.set(j, 1);
      mono.set(n + k, 1);
      h(j, k) = m.theta().coefficient(mono);
    }
  }
  return h;
}

LeviData levi(const HypersurfaceModel& m) {
  LeviData out{determinant(levi_matrix(m.theta(), m.n())), {}, 0, 0};
  out.delta_at_origin = out.delta.constant_term();
  if (out.delta_at_origin.is_zero()) {
    throw Error(ErrorCode::LeviDegenerate, "Delta vanishes at the origin");
  }
  const Inertia inertia = hermitian_inertia(levi_form(m));
  if (inertia.zero != 0) {
    throw Error(ErrorCode::LeviDegenerate, "Levi form is singular at the origin");
  }
  out.positive = inertia.positive;
  out.negative = inertia.negative;
  return out;
}

HypersurfaceModel apply_biholomorphism(const HypersurfaceModel& m,
                                       const std::vector<Series>& zmap,
                                       const Series& wmap) {
  const int n = m.n();
  const int d = m.order();
  const Context hol = contexts::holomorphic(n);
  if (static_cast<int>(zmap.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "one z-component per CR direction required");
  }
  std::vector<Series> map_system;
  for (const auto& s : zmap) map_system.push_back(s);
  map_system.push_back(wmap);
  for (auto& s : map_system) {
    if (!same_context(s.context(), hol)) {
      throw Error(ErrorCode::ContextMismatch, "map components must live in (z1..zn, w)");
    }
    if (!s.constant_term().is_zero()) {
      throw Error(ErrorCode::NonInvertibleMap, "map does not fix the origin");
    }
    s = s.truncated(d);
    if (s.is_exact()) s = Series::from_terms(hol, d, s.terms());
  }

  // Inverse map (z, w) = Psi(z', w'), written over primed names.
  std::vector<std::string> unknowns = hol->names();
  std::vector<std::string> primed;
  for (int k = 1; k <= n; ++k) primed.push_back(var("zp", k));
  primed.push_back("wp");
  ImplicitSolution inverse = [&] {
    try {
      return solve_implicit(map_system, unknowns, primed);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularJacobian) {
        throw Error(ErrorCode::NonInvertibleMap, "linear part of the map is not invertible");
      }
      throw;
    }
  }();

  // Work over (z', zb', wb', w') spelled with the canonical Theta names.
  std::vector<std::string> names;
  for (int k = 1; k <= n; ++k) names.push_back(var("z", k));
  for (int k = 1; k <= n; ++k) names.push_back(var("z", k, "b"));
  names.push_back("wb");
  names.push_back("w");
  const Context work = make_context(std::move(names));

  std::vector<Series> holo_images, anti_images;
  for (int k = 1; k <= n; ++k) {
    holo_images.push_back(Series::variable(work, var("z", k)));
    anti_images.push_back(Series::variable(work, var("z", k, "b")));
  }
  holo_images.push_back(Series::variable(work, "w"));
  anti_images.push_back(Series::variable(work, "wb"));

  std::vector<Series> psi, psi_bar;
  for (const auto& comp : inverse.values) {
    psi.push_back(substitute(comp, work, holo_images));
    psi_bar.push_back(substitute(conjugate_coefficients(comp), work, anti_images));
  }

  // Psi_w(z', w') = Theta(Psi_z(z', w'), Psi-bar_z(zb', wb'), Psi-bar_w(zb', wb'))
  std::vector<Series> theta_images;
  for (int k = 0; k < n; ++k) theta_images.push_back(psi[k]);
  for (int k = 0; k < n; ++k) theta_images.push_back(psi_bar[k]);
  theta_images.push_back(psi_bar[n]);
  Series equation = psi[n] - substitute(m.theta(), work, theta_images);

  const std::vector<Series> system{equation};
  const std::vector<std::string> w_unknown{"w"};
  const std::vector<std::string> targets{"t"};
  ImplicitSolution image = [&] {
    try {
      return solve_implicit(system, w_unknown, targets);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularJacobian) {
        throw Error(ErrorCode::ImageNotGraphable,
                    "image hypersurface is not a graph over the w-axis");
      }
      throw;
    }
  }();
  const Context home = contexts::theta(n);
  Series theta = substitute(image.values[0], home,
                            std::map<std::string, Series>{{"t", Series(home, Series::kExact)}});
  try {
    return make_model(n, theta, image.order);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NormalizationError) {
      throw Error(ErrorCode::ImageNotGraphable,
                  std::string("image is not in canonical position: ") + e.what());
    }
    throw;
  }
}

}  // namespace crflat
