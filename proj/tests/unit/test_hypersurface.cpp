#include <doctest.h>

#include "printers.hpp"

#include "crflat/errors.hpp"
#include "crflat/expr.hpp"
#include "crflat/hypersurface.hpp"
#include "crflat/linear.hpp"
#include "generators.hpp"

using namespace crflat;
using crflat::testing::Engine;

namespace {

Series T(const std::string& text, int n, int order = 8) {
  return parse_series(text, contexts::theta(n), order);
}

HypersurfaceModel M(const std::string& text, int n, int order = 8) {
  return make_model(n, T(text, n, order), order);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::UsageError;
}

}  // namespace

TEST_SUITE("hypersurface") {

TEST_CASE("make_model examples") {
  CHECK(M("-wb + z1*z1b + z2*z2b", 2).n() == 2);
  CHECK(M("-wb + z1*z1b - z2*z2b", 2).order() == 8);
  CHECK(code_of([] { M("-wb + z1*z2b", 2); }) == ErrorCode::RealityError);
  CHECK(code_of([] { M("-wb + z1*z1b", 1); }) == ErrorCode::UnsupportedDimension);
  CHECK(code_of([] { M("1 - wb + z1*z1b + z2*z2b", 2); }) == ErrorCode::NormalizationError);
  CHECK(code_of([] { M("-wb + z1 + z1*z1b + z2*z2b", 2); }) == ErrorCode::NormalizationError);
  CHECK(code_of([] { M("-2*wb + z1*z1b + z2*z2b", 2); }) == ErrorCode::NormalizationError);
  CHECK(code_of([] { make_model(2, T("-wb + z1*z1b", 3), 8); }) == ErrorCode::ContextMismatch);
}

TEST_CASE("conjugate_theta examples") {
  const Context conj_ctx = contexts::theta_conjugate(2);
  CHECK(conjugate_theta(T("-wb + z1*z1b + z2*z2b", 2), 2) ==
        parse_series("-w + z1b*z1 + z2b*z2", conj_ctx, 8));
  CHECK(conjugate_theta(T("-wb + i*z1^2*z1b", 2), 2) ==
        parse_series("-w - i*z1b^2*z1", conj_ctx, 8));
  Engine rng(31);
  for (int draw = 0; draw < 20; ++draw) {
    const Series s = crflat::testing::random_series(rng, contexts::theta(2), 6, 4);
    CHECK(conjugate_theta(conjugate_theta(s, 2), 2) == s);
  }
}

TEST_CASE("check_reality examples") {
  CHECK(check_reality(T("-wb + z1*z1b + z2*z2b", 2), 2).pass);
  CHECK(check_reality(T("-wb + z1*z1b + z2*z2b + z1^2*z1b^2", 2), 2).pass);
  const RealityReport bad = check_reality(T("-wb + z1^2", 2), 2);
  CHECK_FALSE(bad.pass);
  const RealityReport cross = check_reality(T("-wb + z1*z2b", 2), 2);
  CHECK_FALSE(cross.pass);
  CHECK(cross.failed_identity == 1);
  CHECK(cross.monomial == "z2*z1b");
}

TEST_CASE("from_graph examples") {
  const Context g = contexts::graph(2);
  const HypersurfaceModel sphere =
      from_graph(parse_series("x1^2 + y1^2 + x2^2 + y2^2", g, 8), 2, 8);
  CHECK(sphere.theta() == T("-wb + 2*z1*z1b + 2*z2*z2b", 2));
  CHECK(from_graph(Series(g, 8), 2, 8).theta() == T("-wb", 2));
  const HypersurfaceModel bent =
      from_graph(parse_series("x1^2 + y1^2 + x2^2 + y2^2 + v*x1^2", g, 7), 2, 7);
  CHECK(check_reality(bent).pass);
  CHECK(partial(bent.theta(), {"z1", "z1b", "wb"}).constant_term() != GaussianRational(0));
  CHECK(code_of([&] { from_graph(parse_series("x1^2 + i*y1^2", g, 6), 2, 6); }) ==
        ErrorCode::NonReal);
  CHECK(code_of([&] { from_graph(parse_series("x1 + y1^2", g, 6), 2, 6); }) ==
        ErrorCode::NormalizationError);
}

TEST_CASE("property: from_graph output is real") {
  Engine rng(32);
  for (int draw = 0; draw < 6; ++draw) {
    const Series phi = crflat::testing::random_real_graph(rng, 2, 6, 4);
    CHECK(check_reality(from_graph(phi, 2, 6)).pass);
  }
}

TEST_CASE("levi examples") {
  const LeviData heis = levi(M("-wb + z1*z1b + z2*z2b", 2));
  CHECK(heis.delta_at_origin == GaussianRational(-1));
  CHECK(heis.positive == 2);
  CHECK(heis.negative == 0);
  const LeviData mixed = levi(M("-wb + z1*z1b - z2*z2b", 2));
  CHECK(mixed.positive == 1);
  CHECK(mixed.negative == 1);
  CHECK(code_of([] { levi(M("-wb + z1*z1b", 2)); }) == ErrorCode::LeviDegenerate);
  CHECK(levi(M("-wb + z1*z1b + z2*z2b + z3*z3b", 3)).delta_at_origin == GaussianRational(1));
}

TEST_CASE("hermitian inertia") {
  GaussianMatrix h(2, 2);
  h << GaussianRational(0), GaussianRational::i(), -GaussianRational::i(), GaussianRational(0);
  CHECK(is_hermitian(h));
  const Inertia in = hermitian_inertia(h);
  CHECK(in.positive == 1);
  CHECK(in.negative == 1);
  CHECK(in.zero == 0);
  GaussianMatrix not_h(2, 2);
  not_h << GaussianRational(1), GaussianRational(1), GaussianRational(2), GaussianRational(1);
  CHECK_FALSE(is_hermitian(not_h));
  CHECK_THROWS_AS(hermitian_inertia(not_h), Error);
}

TEST_CASE("property: signature is a congruence invariant") {
  Engine rng(33);
  for (int draw = 0; draw < 40; ++draw) {
    const int n = crflat::testing::uniform(rng, 2, 4);
    GaussianMatrix d = GaussianMatrix::Zero(n, n);
    int plus = 0;
    for (int k = 0; k < n; ++k) {
      const int s = crflat::testing::uniform(rng, 0, 2) - 1;
      d(k, k) = GaussianRational(s);
      plus += s > 0;
    }
    const GaussianMatrix a = crflat::testing::random_invertible(rng, n);
    const GaussianMatrix adj = a.unaryExpr([](const GaussianRational& x) { return conj(x); })
                                   .transpose();
    const Inertia in = hermitian_inertia(adj * d * a);
    CHECK(in.positive == plus);
    int zero = 0;
    for (int k = 0; k < n; ++k) zero += d(k, k).is_zero();
    CHECK(in.zero == zero);
  }
}

TEST_CASE("apply_biholomorphism examples") {
  const Context hol = contexts::holomorphic(2);
  auto H = [&](const std::string& s) { return parse_series(s, hol, 8); };
  const HypersurfaceModel heis = M("-wb + z1*z1b + z2*z2b", 2);

  CHECK(apply_biholomorphism(heis, {H("z1"), H("z2")}, H("w")).theta() == heis.theta());
  CHECK(apply_biholomorphism(heis, {H("z1"), H("z2")}, H("w + z1^2")).theta() ==
        T("-wb + z1*z1b + z2*z2b + z1^2 + z1b^2", 2));
  CHECK(apply_biholomorphism(heis, {H("2*z1"), H("2*z2")}, H("4*w")).theta() == heis.theta());

  CHECK(code_of([&] { apply_biholomorphism(heis, {H("z1"), H("z1")}, H("w")); }) ==
        ErrorCode::NonInvertibleMap);
  CHECK(code_of([&] { apply_biholomorphism(heis, {H("z1"), H("z2")}, H("i*w")); }) ==
        ErrorCode::ImageNotGraphable);
}

TEST_CASE("property: holomorphic changes preserve signature and reality") {
  Engine rng(34);
  const Context hol = contexts::holomorphic(2);
  for (int draw = 0; draw < 4; ++draw) {
    const std::vector<int> eps{1, draw % 2 ? -1 : 1};
    const HypersurfaceModel m =
        make_model(2, crflat::testing::heisenberg(2, eps, 6), 6);
    const GaussianMatrix a = crflat::testing::random_invertible(rng, 2);
    std::vector<Series> zmap;
    for (int k = 0; k < 2; ++k) {
      zmap.push_back(a(k, 0) * Series::variable(hol, "z1", 6) +
                     a(k, 1) * Series::variable(hol, "z2", 6) +
                     crflat::testing::perturbation_coefficient(rng, false) *
                         parse_series("z1*w", hol, 6));
    }
    const GaussianRational c(crflat::testing::uniform(rng, 1, 3));
    const Series wmap = c * Series::variable(hol, "w", 6) + parse_series("z1^2", hol, 6);
    const HypersurfaceModel image = apply_biholomorphism(m, zmap, wmap);
    CHECK(check_reality(image).pass);
    const LeviData data = levi(image);
    CHECK(data.positive == (eps[1] > 0 ? 2 : 1));
  }
}

}  // TEST_SUITE
