#include <doctest.h>

#include "printers.hpp"

#include "crflat/errors.hpp"
#include "crflat/expr.hpp"
#include "crflat/hypersurface.hpp"
#include "crflat/implicit.hpp"
#include "crflat/pde_system.hpp"
#include "generators.hpp"

using namespace crflat;
using crflat::testing::Engine;

namespace {

HypersurfaceModel M(const std::string& text, int n, int order = 8) {
  return make_model(n, parse_series(text, contexts::theta(n), order), order);
}

Series J(const std::string& text, int n, int order = Series::kExact) {
  return parse_series(text, contexts::jet(n), order);
}

Series Fq(const std::string& text, int n, int order = Series::kExact) {
  return parse_series(text, contexts::fundamental(n), order);
}

PdeSystem system2(const std::string& f11, const std::string& f12, const std::string& f22,
                  int order = 6) {
  return PdeSystem(2, {{{0, 0}, J(f11, 2, order)}, {{0, 1}, J(f12, 2, order)},
                       {{1, 1}, J(f22, 2, order)}},
                   order);
}

// G(x, y, yx) := T(x, A, B), where (A, B) solve y = Q, yx_k = Q_{x_k}.
Series through_solution(const FundamentalSolution& fs, const Series& t) {
  const int n = fs.n();
  std::vector<Series> system{fs.q()};
  for (int k = 0; k < n; ++k) system.push_back(partial(fs.q(), static_cast<std::size_t>(k)));
  std::vector<std::string> unknowns, targets{"y"};
  for (int k = 1; k <= n; ++k) {
    unknowns.push_back("a" + std::to_string(k));
    targets.push_back("yx" + std::to_string(k));
  }
  unknowns.push_back("b");
  const ImplicitSolution sol = solve_implicit(system, unknowns, targets);
  const Context jet = contexts::jet(n);
  std::vector<Series> images;
  for (int k = 1; k <= n; ++k) images.push_back(Series::variable(jet, "x" + std::to_string(k)));
  for (const auto& v : sol.values) images.push_back(relabel(v, jet));
  return substitute(t, jet, images);
}

// Pulls G(x, y, yx) back along y = Q, yx_k = Q_{x_k}.
Series pull_back(const FundamentalSolution& fs, const Series& g) {
  const int n = fs.n();
  const Context& ctx = fs.q().context();
  std::vector<Series> images;
  for (int k = 1; k <= n; ++k) images.push_back(Series::variable(ctx, "x" + std::to_string(k)));
  images.push_back(fs.q());
  for (int k = 0; k < n; ++k) images.push_back(partial(fs.q(), static_cast<std::size_t>(k)));
  return substitute(g, ctx, images);
}

}  // namespace

TEST_SUITE("pde-system") {

TEST_CASE("construction rules") {
  CHECK_THROWS_AS(PdeSystem(2, {{{0, 1}, J("x1", 2)}, {{1, 0}, J("x2", 2)}}, 4), Error);
  CHECK_THROWS_AS(PdeSystem(2, {{{0, 2}, J("x1", 2)}}, 4), Error);
  CHECK_THROWS_AS(PdeSystem(2, {{{0, 0}, Fq("x1", 2)}}, 4), Error);
  const PdeSystem s = system2("x1", "yx2", "0");
  CHECK(s.f(1, 0) == s.f(0, 1));
  CHECK_THROWS_AS(s.f(0, 3), Error);
}

TEST_CASE("derive_associated_system examples") {
  const PdeSystem heis = derive_associated_system(M("-wb + z1*z1b + z2*z2b", 2));
  for (int k1 = 0; k1 < 2; ++k1) {
    for (int k2 = 0; k2 < 2; ++k2) CHECK(heis.f(k1, k2).is_zero());
  }
  const PdeSystem shear =
      derive_associated_system(M("-wb + z1*z1b + z2*z2b + z1^2 + z1b^2", 2));
  CHECK(shear.f(0, 0) == Series::constant(shear.context(), 2, shear.order()));
  CHECK(shear.f(0, 1).is_zero());
  CHECK(shear.f(1, 1).is_zero());

  const PdeSystem quartic =
      derive_associated_system(M("-wb + z1*z1b + z2*z2b + z1^2*z1b^2", 2));
  CHECK_FALSE(quartic.f(0, 0).is_zero());
  CHECK_FALSE(partial(quartic.f(0, 0), "yx1").is_zero());

  CHECK_THROWS_AS(derive_associated_system(M("-wb + z1*z1b", 2)), Error);
}

TEST_CASE("total_derivative examples") {
  const PdeSystem s = system2("x1*yx1", "y", "0");
  CHECK(total_derivative(s, 0, J("y", 2)) == J("yx1", 2));
  CHECK(total_derivative(s, 0, J("yx2", 2)) == s.f(0, 1));
  CHECK(total_derivative(s, 0, J("x2", 2)).is_zero());
  CHECK(total_derivative(s, 1, J("x2*y", 2, 6)) == J("y + x2*yx2", 2, 5));
}

TEST_CASE("complete integrability examples") {
  const IntegrabilityReport zero = check_complete_integrability(system2("0", "0", "0"));
  CHECK(zero.pass);
  const IntegrabilityReport bad = check_complete_integrability(system2("x2", "0", "0"));
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.failures.size() >= 1);
  const IntegrabilityFailure& f = bad.failures.front();
  CHECK(f.k1 == 0);
  CHECK(f.k2 == 0);
  CHECK(f.k3 == 1);
  CHECK(f.monomial == "1");
  CHECK(f.residual == GaussianRational(1));
}

TEST_CASE("recover_system_from_solution examples") {
  const PdeSystem flat =
      recover_system_from_solution(FundamentalSolution(2, Fq("-b + x1*a1 + x2*a2", 2, 7)));
  CHECK(flat.f(0, 0).is_zero());
  CHECK(flat.f(0, 1).is_zero());
  CHECK(flat.f(1, 1).is_zero());

  const FundamentalSolution heis(2, Fq("-b + x1*a1 + x2*a2", 2, 7));
  CHECK(heis.normalized());
  CHECK_FALSE(FundamentalSolution(2, Fq("-b + x1*a2 + x2*a1", 2, 7)).normalized());

  const FundamentalSolution quartic(2, Fq("-b + x1*a1 + x2*a2 + x1^2*a1^2", 2, 7));
  const PdeSystem s = recover_system_from_solution(quartic);
  CHECK_FALSE(s.f(0, 0).is_zero());
  for (int k1 = 0; k1 < 2; ++k1) {
    for (int k2 = k1; k2 < 2; ++k2) {
      const Series lhs = partial(partial(quartic.q(), static_cast<std::size_t>(k1)),
                                 static_cast<std::size_t>(k2));
      const Series rhs = pull_back(quartic, s.f(k1, k2));
      CHECK(equal_to_order(lhs, rhs, std::min(lhs.order(), rhs.order())));
    }
  }
  CHECK_THROWS_AS(recover_system_from_solution(FundamentalSolution(2, Fq("-b + x1*a1", 2, 7))),
                  Error);
}

TEST_CASE("property: derived systems are completely integrable") {
  Engine rng(41);
  for (int draw = 0; draw < 4; ++draw) {
    const HypersurfaceModel m =
        make_model(2, crflat::testing::perturbed_heisenberg(rng, 2, 7), 7);
    const IntegrabilityReport r = check_complete_integrability(derive_associated_system(m));
    CHECK(r.pass);
  }
}

TEST_CASE("jet_transfer_second examples") {
  const FundamentalSolution flat(2, Fq("-b + x1*a1 + x2*a2", 2, 7));
  CHECK(jet_transfer_second(flat, Fq("a1^2", 2, 7), 0, 0) == Fq("2", 2, 5));
  CHECK(jet_transfer_second(flat, Fq("x1^2 + x2", 2, 7), 0, 1).is_zero());
  CHECK_THROWS_AS(jet_transfer_second(flat, Fq("a1", 2, 7), 0, 2), Error);
  CHECK_THROWS_AS(jet_transfer_second(flat, J("yx1", 2, 7), 0, 1), Error);
}

TEST_CASE("property: jet_transfer_second agrees with the chain rule") {
  Engine rng(42);
  const Context fctx = contexts::fundamental(2);
  for (int draw = 0; draw < 4; ++draw) {
    Series q = Fq("-b + x1*a1 + x2*a2", 2, 6);
    for (int extra = 0; extra < 3; ++extra) {
      Monomial m = crflat::testing::random_monomial(rng, fctx->arity(), 3);
      if (m.degree() < 3) continue;
      q += Series::from_terms(fctx, 6, {{m, crflat::testing::small_rational(rng)}});
    }
    const FundamentalSolution fs(2, q);
    Series t = crflat::testing::random_series(rng, fctx, 6, 3, 4);
    t += Fq("a1*a2 + b*a1", 2, 6);
    const Series g = through_solution(fs, t);
    for (int l1 = 0; l1 < 2; ++l1) {
      for (int l2 = l1; l2 < 2; ++l2) {
        const Series direct = pull_back(
            fs, partial(partial(g, static_cast<std::size_t>(3 + l1)),
                        static_cast<std::size_t>(3 + l2)));
        const Series transferred = jet_transfer_second(fs, t, l1, l2);
        CHECK(transferred == jet_transfer_second(fs, t, l2, l1));
        const int d = std::min(direct.order(), transferred.order());
        CHECK(d >= 2);
        CHECK(equal_to_order(direct, transferred, d));
      }
    }
  }
}

}  // TEST_SUITE
