#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crflat/errors.hpp"
#include "crflat/report.hpp"

namespace {

struct Options {
  std::optional<int> n;
  std::optional<int> order;
  std::optional<std::string> theta;
  std::optional<std::string> graph;
  std::vector<std::string> f;
  std::vector<std::string> zmap;
  std::optional<std::string> wmap;
  std::optional<std::string> checks;
  std::optional<std::string> input;
  bool json = false;
  bool witness = false;
};

std::pair<std::string, std::string> split_assignment(const std::string& s, const char* flag) {
  const auto eq = s.find('=');
  if (eq == std::string::npos) {
    throw crflat::Error(crflat::ErrorCode::UsageError,
                        std::string(flag) + " expects key=expr, got '" + s + "'");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

crflat::JobSpec build_job(crflat::Command command, const Options& o) {
  crflat::JobSpec job;
  job.command = command;
  if (o.input) {
    std::ifstream in(*o.input);
    if (!in) {
      throw crflat::Error(crflat::ErrorCode::UsageError, "cannot read input file " + *o.input);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    crflat::apply_input_file(job, buffer.str());
    job.command = command;
  }
  if (o.n) job.n = *o.n;
  if (o.order) job.order = *o.order;
  if (o.theta) job.theta = o.theta;
  if (o.graph) job.graph = o.graph;
  if (o.wmap) job.wmap = o.wmap;
  std::string lines;
  for (const auto& entry : o.f) {
    auto [key, expr] = split_assignment(entry, "--f");
    lines += "f[" + key + "] = " + expr + "\n";
  }
  for (const auto& entry : o.zmap) {
    auto [key, expr] = split_assignment(entry, "--zmap");
    lines += "zmap[" + key + "] = " + expr + "\n";
  }
  if (o.checks) lines += "checks = " + *o.checks + "\n";
  crflat::apply_input_file(job, lines);
  job.witness = job.witness || o.witness;
  return job;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact pseudosphericality checks for real hypersurfaces w = Theta(z, zb, wb)"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::pair<crflat::Command, std::string>> commands{
      {crflat::Command::Check, "full pipeline: reality, Levi form, integrability, flatness"},
      {crflat::Command::Reality, "check the reality identities of Theta"},
      {crflat::Command::Levi, "Levi nondegeneracy and signature"},
      {crflat::Command::DerivePde, "derive the associated second-order PDE system"},
      {crflat::Command::Integrability, "complete integrability of a PDE system"},
      {crflat::Command::Curvature, "flatness tensor of a user-supplied PDE system"},
      {crflat::Command::Transform, "apply a biholomorphism to the hypersurface"}};

  std::optional<crflat::Command> chosen;
  for (const auto& [command, help] : commands) {
    CLI::App* sub = app.add_subcommand(crflat::command_name(command), help);
    sub->add_option("--n", o.n, "CR dimension (number of z variables)");
    sub->add_option("--order", o.order, "jet order of the computation (default 8)");
    sub->add_option("--theta", o.theta, "complex defining function in z1.., z1b.., wb");
    sub->add_option("--graph", o.graph, "real graph function phi in x1.., y1.., v");
    sub->add_option("--f", o.f, "PDE entry k1,k2=expr in x1.., y, yx1.. (repeatable)");
    sub->add_option("--zmap", o.zmap, "transform: k=expr for the new z_k in z1.., w");
    sub->add_option("--wmap", o.wmap, "transform: expression for the new w");
    sub->add_option("--checks", o.checks, "comma-separated subset of checks to run");
    sub->add_option("--input", o.input, "key = value input file");
    sub->add_flag("--json", o.json, "print the machine-readable JSON report");
    sub->add_flag("--witness", o.witness, "print the first nonzero tensor coefficient");
    sub->callback([&chosen, command = command] { chosen = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  crflat::Report report;
  bool witness = o.witness;
  try {
    const crflat::JobSpec job = build_job(*chosen, o);
    witness = job.witness;
    report = crflat::run(job);
  } catch (const crflat::Error& e) {
    report.command = crflat::command_name(*chosen);
    report.error = crflat::ErrorOut{std::string(crflat::error_code_name(e.code())), e.what(), true};
  }

  if (report.error) std::cerr << "crflat: " << report.error->message << "\n";
  if (o.json) {
    std::cout << crflat::to_json(report).dump(2) << "\n";
  } else {
    std::cout << crflat::human_readable(report, witness);
  }
  return report.exit_code();
}
