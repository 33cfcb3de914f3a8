#include <doctest.h>

#include "printers.hpp"

#include "crflat/errors.hpp"
#include "crflat/report.hpp"

using namespace crflat;

namespace {

JobSpec job(Command c, int n, const std::string& theta, int order = 8) {
  JobSpec j;
  j.command = c;
  j.n = n;
  j.order = order;
  j.theta = theta;
  return j;
}

Report strip_timings(Report r) {
  r.timings_ms.clear();
  return r;
}

}  // namespace

TEST_SUITE("cli-report") {

TEST_CASE("full check of the Heisenberg sphere") {
  const Report r = run(job(Command::Check, 2, "-wb + z1*z1b + z2*z2b"));
  CHECK(r.reality == "pass");
  CHECK(r.levi_nondegenerate == true);
  CHECK(r.signature == std::array<int, 2>{2, 0});
  CHECK(r.pseudospherical == "vanishes_to_order");
  CHECK(r.order_certified == 4);
  CHECK(r.cross_check == "agree");
  CHECK(r.exit_code() == 0);
}

TEST_CASE("reality failure") {
  const Report r = run(job(Command::Check, 2, "-wb + z1*z2b"));
  CHECK(r.reality == "fail");
  REQUIRE(r.reality_failure);
  CHECK(r.reality_failure->monomial == "z2*z1b");
  CHECK(r.exit_code() == 1);
}

TEST_CASE("input errors exit with 2") {
  const Report low = run(job(Command::Check, 1, "-wb + z1*z1b"));
  REQUIRE(low.error);
  CHECK(low.error->code == "unsupported_dimension");
  CHECK(low.exit_code() == 2);

  const Report parse = run(job(Command::Check, 2, "-wb + * z1"));
  REQUIRE(parse.error);
  CHECK(parse.error->code == "parse_error");
  CHECK(parse.exit_code() == 2);

  const Report shallow = run(job(Command::Check, 2, "-wb + z1*z1b + z2*z2b", 3));
  REQUIRE(shallow.error);
  CHECK(shallow.exit_code() == 2);
}

TEST_CASE("failed checks exit with 1") {
  const Report degenerate = run(job(Command::Levi, 2, "-wb + z1*z1b"));
  CHECK(degenerate.levi_nondegenerate == false);
  CHECK(degenerate.exit_code() == 1);

  const Report curved = run(job(Command::Check, 2, "-wb + z1*z1b + z2*z2b + z1^2*z1b^2"));
  CHECK(curved.pseudospherical == "non_vanishing");
  REQUIRE(curved.witness);
  CHECK(curved.witness->component == std::array<int, 4>{1, 1, 1, 1});
  CHECK(curved.witness->coefficient.re == "-2/3");
  CHECK(curved.exit_code() == 1);
}

TEST_CASE("user supplied systems") {
  JobSpec bad;
  bad.command = Command::Integrability;
  bad.n = 2;
  bad.order = 6;
  bad.f[{1, 1}] = "x2";
  const Report r = run(bad);
  CHECK(r.integrability == "fail");
  REQUIRE_FALSE(r.integrability_failures.empty());
  CHECK(r.integrability_failures[0].coefficient.re == "1");
  CHECK(r.exit_code() == 1);

  JobSpec curvature;
  curvature.command = Command::Curvature;
  curvature.n = 2;
  curvature.order = 6;
  curvature.f[{1, 1}] = "yx1^2";
  const Report c = run(curvature);
  CHECK(c.hachtroudi == "non_vanishing");
  REQUIRE(c.witness);
  CHECK(c.witness->coefficient.re == "1/3");
}

TEST_CASE("derive-pde and transform") {
  const Report d = run(job(Command::DerivePde, 2, "-wb + z1*z1b + z2*z2b + z1^2 + z1b^2"));
  CHECK(d.pde.at("1,1") == "2");
  CHECK(d.exit_code() == 0);

  JobSpec t = job(Command::Transform, 2, "-wb + z1*z1b + z2*z2b");
  t.wmap = "w + z1^2";
  const Report tr = run(t);
  REQUIRE(tr.theta);
  CHECK(tr.theta->find("z1^2") != std::string::npos);
  CHECK(tr.exit_code() == 0);
}

TEST_CASE("input file format") {
  JobSpec j;
  apply_input_file(j,
                   "# shear image of the sphere\n"
                   "command = check\n"
                   "n = 2\n"
                   "order = 7\n"
                   "theta = -wb + z1*z1b + z2*z2b + z1^2 + z1b^2   # exact polynomial\n"
                   "checks = reality, levi, pseudosphericality\n"
                   "witness = true\n");
  CHECK(j.n == 2);
  CHECK(j.order == 7);
  CHECK(j.checks.size() == 3);
  CHECK(j.witness);
  const Report r = run(j);
  CHECK(r.pseudospherical == "vanishes_to_order");
  CHECK(r.cross_check == "skipped");
  CHECK(r.exit_code() == 0);

  JobSpec bad;
  CHECK_THROWS_AS(apply_input_file(bad, "colour = blue\n"), Error);
  CHECK_THROWS_AS(apply_input_file(bad, "n 2\n"), Error);
  CHECK_THROWS_AS(apply_input_file(bad, "checks = everything\n"), Error);
}

TEST_CASE("json round trip is idempotent and deterministic") {
  for (const char* theta : {"-wb + z1*z1b + z2*z2b", "-wb + z1*z2b",
                            "-wb + z1*z1b + z2*z2b + z1^2*z1b^2", "-wb + z1*z1b"}) {
    const Report r = run(job(Command::Check, 2, theta));
    const auto once = to_json(r);
    const Report back = report_from_json(nlohmann::json::parse(once.dump()));
    CHECK(back == r);
    CHECK(to_json(back).dump() == once.dump());
    CHECK(strip_timings(run(job(Command::Check, 2, theta))) == strip_timings(r));
    CHECK_FALSE(human_readable(r, true).empty());
  }
}

TEST_CASE("json field names") {
  const auto j = to_json(run(job(Command::Check, 2, "-wb + z1*z1b - z2*z2b")));
  for (const char* key : {"n", "order_requested", "order_certified", "reality",
                          "levi_nondegenerate", "signature", "pseudospherical", "witness",
                          "timings_ms"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["signature"] == nlohmann::json::array({1, 1}));
}

}  // TEST_SUITE
