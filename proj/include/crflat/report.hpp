#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace crflat {

enum class Command { Check, Reality, Levi, DerivePde, Integrability, Curvature, Transform };

enum class CheckKind { Reality, Levi, Signature, Integrability, Pseudosphericality, CrossCheck };

std::string command_name(Command c);
std::optional<Command> command_from_name(const std::string& name);
std::string check_name(CheckKind c);
std::optional<CheckKind> check_from_name(const std::string& name);

/// One CLI invocation or input file.
struct JobSpec {
  Command command = Command::Check;
  int n = 0;
  int order = 8;
  std::optional<std::string> theta;
  std::optional<std::string> graph;
  /// F_{k1,k2} expressions keyed by one-based (k1, k2).
  std::map<std::pair<int, int>, std::string> f;
  /// Biholomorphism for `transform`: z-components keyed by one-based k.
  std::map<int, std::string> zmap;
  std::optional<std::string> wmap;
  /// Empty means "everything the command supports".
  std::set<CheckKind> checks;
  bool witness = false;
};

/// Applies `key = value` lines (`#` starts a comment) on top of `job`.
/// Keys: command, n, order, theta, graph, f[k1,k2], zmap[k], wmap, checks,
/// witness. Throws Error(UsageError) naming the offending line.
void apply_input_file(JobSpec& job, const std::string& text);

struct CoefficientOut {
  std::string re;
  std::string im;
  friend bool operator==(const CoefficientOut&, const CoefficientOut&) = default;
};

struct WitnessOut {
  std::array<int, 4> component{};  // one-based
  std::string monomial;
  CoefficientOut coefficient;
  friend bool operator==(const WitnessOut&, const WitnessOut&) = default;
};

struct RealityFailureOut {
  int identity = 0;
  std::string monomial;
  CoefficientOut coefficient;
  friend bool operator==(const RealityFailureOut&, const RealityFailureOut&) = default;
};

struct IntegrabilityFailureOut {
  std::array<int, 3> indices{};  // one-based (k1, k2, k3)
  std::string monomial;
  CoefficientOut coefficient;
  friend bool operator==(const IntegrabilityFailureOut&, const IntegrabilityFailureOut&) = default;
};

struct ErrorOut {
  std::string code;
  std::string message;
  bool usage = false;
  friend bool operator==(const ErrorOut&, const ErrorOut&) = default;
};

/// Result of run(). Status strings: "pass" / "fail" / "skipped";
/// tensor verdicts: "vanishes_to_order" / "non_vanishing" / "skipped";
/// cross-check: "agree" / "disagree" / "skipped".
struct Report {
  std::string command;
  int n = 0;
  int order_requested = 0;
  std::optional<int> order_certified;
  std::string reality = "skipped";
  std::optional<RealityFailureOut> reality_failure;
  std::optional<bool> levi_nondegenerate;
  std::optional<std::array<int, 2>> signature;
  std::string integrability = "skipped";
  std::vector<IntegrabilityFailureOut> integrability_failures;
  std::string pseudospherical = "skipped";
  std::string hachtroudi = "skipped";
  std::optional<WitnessOut> witness;
  std::string cross_check = "skipped";
  std::optional<WitnessOut> cross_check_disagreement;
  std::optional<std::string> theta;
  std::map<std::string, std::string> pde;
  std::optional<ErrorOut> error;
  std::map<std::string, double> timings_ms;

  /// 0: every requested check passed; 1: a check failed or the tensor does
  /// not vanish; 2: input or usage error.
  int exit_code() const;

  friend bool operator==(const Report&, const Report&) = default;
};

Report run(const JobSpec& job);

nlohmann::ordered_json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
std::string human_readable(const Report& r, bool witness);

}  // namespace crflat
