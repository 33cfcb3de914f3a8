#include "crflat/report.hpp"

#include <chrono>
#include <sstream>

#include "crflat/errors.hpp"
#include "crflat/expr.hpp"
#include "crflat/flatness.hpp"
#include "crflat/hypersurface.hpp"
#include "crflat/pde_system.hpp"

namespace crflat {

namespace {

const std::map<Command, std::string>& command_names() {
  static const std::map<Command, std::string> names{
      {Command::Check, "check"},           {Command::Reality, "reality"},
      {Command::Levi, "levi"},             {Command::DerivePde, "derive-pde"},
      {Command::Integrability, "integrability"}, {Command::Curvature, "curvature"},
      {Command::Transform, "transform"}};
  return names;
}

const std::map<CheckKind, std::string>& check_names() {
  static const std::map<CheckKind, std::string> names{
      {CheckKind::Reality, "reality"},
      {CheckKind::Levi, "levi"},
      {CheckKind::Signature, "signature"},
      {CheckKind::Integrability, "integrability"},
      {CheckKind::Pseudosphericality, "pseudosphericality"},
      {CheckKind::CrossCheck, "cross-check"}};
  return names;
}

bool is_usage_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::RealityError:
    case ErrorCode::LeviDegenerate:
    case ErrorCode::RankCondition:
    case ErrorCode::ImageNotGraphable:
      return false;
    default:
      return true;
  }
}

CoefficientOut coefficient_out(const GaussianRational& c) {
  return {rational_string(c.real()), rational_string(c.imag())};
}

WitnessOut witness_out(const Witness& w) {
  return {{w.component[0] + 1, w.component[1] + 1, w.component[2] + 1, w.component[3] + 1},
          w.monomial_text,
          coefficient_out(w.coefficient)};
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::UsageError, "expected an integer for " + what + ", got '" + s + "'");
  }
}

std::pair<int, int> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    throw Error(ErrorCode::UsageError, "expected k1,k2, got '" + s + "'");
  }
  return {parse_int(trim(s.substr(0, comma)), "k1"), parse_int(trim(s.substr(comma + 1)), "k2")};
}

class Timer {
 public:
  Timer(Report& r, std::string key)
      : report_(r), key_(std::move(key)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const auto end = std::chrono::steady_clock::now();
    report_.timings_ms[key_] =
        std::chrono::duration<double, std::milli>(end - start_).count();
  }

 private:
  Report& report_;
  std::string key_;
  std::chrono::steady_clock::time_point start_;
};

std::set<CheckKind> default_checks(Command c) {
  using K = CheckKind;
  switch (c) {
    case Command::Check:
      return {K::Reality, K::Levi, K::Signature, K::Integrability, K::Pseudosphericality,
              K::CrossCheck};
    case Command::Reality:
      return {K::Reality};
    case Command::Levi:
      return {K::Reality, K::Levi, K::Signature};
    case Command::DerivePde:
      return {K::Reality, K::Levi};
    case Command::Integrability:
      return {K::Integrability};
    case Command::Curvature:
      return {};
    case Command::Transform:
      return {K::Reality, K::Levi, K::Signature};
  }
  return {};
}

class Pipeline {
 public:
  Pipeline(const JobSpec& job, Report& report) : job_(job), report_(report) {
    checks_ = job.checks.empty() ? default_checks(job.command) : job.checks;
  }

  void execute() {
    if (wants(CheckKind::Pseudosphericality) || wants(CheckKind::CrossCheck)) {
      if (job_.order < 4) {
        throw Error(ErrorCode::UsageError,
                    "pseudosphericality needs order >= 4 (fourth-order jets of Theta)");
      }
    }
    if (job_.order < 1) throw Error(ErrorCode::UsageError, "order must be positive");
    if (!job_.f.empty()) {
      run_system_job();
      return;
    }
    if (job_.command == Command::Curvature && !job_.theta && !job_.graph) {
      throw Error(ErrorCode::UsageError, "curvature needs --f entries or a hypersurface");
    }
    run_hypersurface_job();
  }

 private:
  bool wants(CheckKind k) const { return checks_.count(k) > 0; }

  void run_system_job() {
    if (job_.n < 1) throw Error(ErrorCode::UnsupportedDimension, "n must be at least 1");
    const Context jet = contexts::jet(job_.n);
    std::map<std::pair<int, int>, Series> entries;
    {
      Timer t(report_, "parse");
      for (const auto& [key, text] : job_.f) {
        if (key.first > key.second && job_.f.count({key.second, key.first})) {
          throw Error(ErrorCode::UsageError, "F given for both (k1,k2) and (k2,k1)");
        }
        entries.emplace(std::make_pair(key.first - 1, key.second - 1),
                        parse_series(text, jet, job_.order));
      }
    }
    const PdeSystem system(job_.n, entries, job_.order);
    if (wants(CheckKind::Integrability) || job_.command == Command::Integrability) {
      Timer t(report_, "integrability");
      record_integrability(check_complete_integrability(system));
    }
    if (job_.command == Command::Curvature || job_.command == Command::Check) {
      Timer t(report_, "curvature");
      const FlatnessTensor w = hachtroudi_tensor(system);
      report_.order_certified = w.certified_order();
      if (auto wit = w.first_nonzero()) {
        report_.hachtroudi = "non_vanishing";
        report_.witness = witness_out(*wit);
      } else {
        report_.hachtroudi = "vanishes_to_order";
      }
    }
  }

  void record_integrability(const IntegrabilityReport& r) {
    report_.integrability = r.pass ? "pass" : "fail";
    for (const auto& f : r.failures) {
      report_.integrability_failures.push_back(
          {{f.k1 + 1, f.k2 + 1, f.k3 + 1}, f.monomial, coefficient_out(f.residual)});
    }
  }

  void run_hypersurface_job() {
    if (job_.n < 2) {
      throw Error(ErrorCode::UnsupportedDimension, "CR dimension n must be at least 2");
    }
    const int n = job_.n;
    std::optional<HypersurfaceModel> model;
    {
      Timer t(report_, "parse");
      if (job_.theta && job_.graph) {
        throw Error(ErrorCode::UsageError, "give either theta or graph, not both");
      }
      if (job_.graph) {
        model = from_graph(parse_series(*job_.graph, contexts::graph(n), job_.order), n,
                           job_.order);
        report_.reality = "pass";
      } else if (job_.theta) {
        const Series theta = parse_series(*job_.theta, contexts::theta(n), job_.order);
        const RealityReport rr = check_reality(theta, n);
        report_.reality = rr.pass ? "pass" : "fail";
        if (!rr.pass) {
          report_.reality_failure =
              RealityFailureOut{rr.failed_identity, rr.monomial, coefficient_out(rr.residual)};
          return;
        }
        if (job_.command == Command::Reality) return;
        model = make_model(n, theta, job_.order);
      } else {
        throw Error(ErrorCode::UsageError, "no input: give --theta, --graph or --f");
      }
    }
    if (job_.command == Command::Reality) return;

    if (job_.command == Command::Transform) {
      Timer t(report_, "transform");
      model = transform(*model);
      report_.theta = to_string(model->theta());
    }

    if (wants(CheckKind::Levi) || wants(CheckKind::Signature) || needs_nondegeneracy()) {
      Timer t(report_, "levi");
      try {
        const LeviData data = levi(*model);
        report_.levi_nondegenerate = true;
        report_.signature = std::array<int, 2>{data.positive, data.negative};
      } catch (const Error& e) {
        if (e.code() != ErrorCode::LeviDegenerate) throw;
        report_.levi_nondegenerate = false;
        return;
      }
    }

    std::optional<PdeSystem> phi;
    if (job_.command == Command::DerivePde || wants(CheckKind::Integrability)) {
      Timer t(report_, "derive");
      phi = derive_associated_system(*model);
      if (job_.command == Command::DerivePde) {
        for (int k1 = 0; k1 < n; ++k1) {
          for (int k2 = k1; k2 < n; ++k2) {
            report_.pde[std::to_string(k1 + 1) + "," + std::to_string(k2 + 1)] =
                to_string(phi->f(k1, k2));
          }
        }
        report_.order_certified = phi->order();
      }
    }
    if (phi && wants(CheckKind::Integrability)) {
      Timer t(report_, "integrability");
      record_integrability(check_complete_integrability(*phi));
    }
    if (wants(CheckKind::Pseudosphericality) || job_.command == Command::Curvature) {
      Timer t(report_, "pseudosphericality");
      const Verdict v = is_pseudospherical(*model, job_.order);
      report_.order_certified = v.certified_order;
      report_.pseudospherical =
          v.kind == Verdict::Kind::VanishesToOrder ? "vanishes_to_order" : "non_vanishing";
      if (v.witness) report_.witness = witness_out(*v.witness);
    }
    if (wants(CheckKind::CrossCheck)) {
      Timer t(report_, "cross_check");
      const CrossCheckReport cc = cross_check(*model, job_.order);
      report_.cross_check = cc.agree ? "agree" : "disagree";
      if (cc.disagreement) report_.cross_check_disagreement = witness_out(*cc.disagreement);
    }
  }

  bool needs_nondegeneracy() const {
    return job_.command == Command::DerivePde || job_.command == Command::Curvature ||
           wants(CheckKind::Integrability) || wants(CheckKind::Pseudosphericality) ||
           wants(CheckKind::CrossCheck);
  }

  HypersurfaceModel transform(const HypersurfaceModel& m) {
    const int n = m.n();
    const Context hol = contexts::holomorphic(n);
    std::vector<Series> zmap;
    for (int k = 1; k <= n; ++k) {
      auto it = job_.zmap.find(k);
      zmap.push_back(it == job_.zmap.end()
                         ? Series::variable(hol, "z" + std::to_string(k), job_.order)
                         : parse_series(it->second, hol, job_.order));
    }
    for (const auto& [k, _] : job_.zmap) {
      if (k < 1 || k > n) throw Error(ErrorCode::UsageError, "zmap index out of range");
    }
    const Series wmap = job_.wmap ? parse_series(*job_.wmap, hol, job_.order)
                                  : Series::variable(hol, "w", job_.order);
    return apply_biholomorphism(m, zmap, wmap);
  }

  const JobSpec& job_;
  Report& report_;
  std::set<CheckKind> checks_;
};

nlohmann::ordered_json coefficient_json(const CoefficientOut& c) {
  return {{"re", c.re}, {"im", c.im}};
}

CoefficientOut coefficient_from(const nlohmann::json& j) {
  return {j.at("re").get<std::string>(), j.at("im").get<std::string>()};
}

nlohmann::ordered_json witness_json(const WitnessOut& w) {
  return {{"component", w.component},
          {"monomial", w.monomial},
          {"coefficient", coefficient_json(w.coefficient)}};
}

WitnessOut witness_from(const nlohmann::json& j) {
  return {j.at("component").get<std::array<int, 4>>(), j.at("monomial").get<std::string>(),
          coefficient_from(j.at("coefficient"))};
}

template <typename T, typename F>
nlohmann::ordered_json optional_json(const std::optional<T>& v, F&& f) {
  return v ? nlohmann::ordered_json(f(*v)) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string command_name(Command c) { return command_names().at(c); }

std::optional<Command> command_from_name(const std::string& name) {
  for (const auto& [c, s] : command_names()) {
    if (s == name) return c;
  }
  return std::nullopt;
}

std::string check_name(CheckKind c) { return check_names().at(c); }

std::optional<CheckKind> check_from_name(const std::string& name) {
  for (const auto& [c, s] : check_names()) {
    if (s == name) return c;
  }
  if (name == "pseudospherical") return CheckKind::Pseudosphericality;
  return std::nullopt;
}

void apply_input_file(JobSpec& job, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::UsageError,
                  "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    auto bracket = [&](const std::string& stem) -> std::optional<std::string> {
      if (key.rfind(stem + "[", 0) == 0 && key.back() == ']') {
        return key.substr(stem.size() + 1, key.size() - stem.size() - 2);
      }
      return std::nullopt;
    };
    if (key == "command") {
      auto c = command_from_name(value);
      if (!c) throw Error(ErrorCode::UsageError, "unknown command '" + value + "'");
      job.command = *c;
    } else if (key == "n") {
      job.n = parse_int(value, "n");
    } else if (key == "order") {
      job.order = parse_int(value, "order");
    } else if (key == "theta") {
      job.theta = value;
    } else if (key == "graph") {
      job.graph = value;
    } else if (auto idx = bracket("f")) {
      job.f[parse_pair(*idx)] = value;
    } else if (auto zk = bracket("zmap")) {
      job.zmap[parse_int(trim(*zk), "zmap index")] = value;
    } else if (key == "wmap") {
      job.wmap = value;
    } else if (key == "checks") {
      std::istringstream list(value);
      std::string item;
      while (std::getline(list, item, ',')) {
        auto c = check_from_name(trim(item));
        if (!c) throw Error(ErrorCode::UsageError, "unknown check '" + trim(item) + "'");
        job.checks.insert(*c);
      }
    } else if (key == "witness") {
      job.witness = value == "true" || value == "1" || value == "yes";
    } else {
      throw Error(ErrorCode::UsageError,
                  "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
}

int Report::exit_code() const {
  if (error) return error->usage ? 2 : 1;
  if (reality == "fail" || integrability == "fail") return 1;
  if (levi_nondegenerate && !*levi_nondegenerate) return 1;
  if (pseudospherical == "non_vanishing" || hachtroudi == "non_vanishing") return 1;
  if (cross_check == "disagree") return 1;
  return 0;
}

Report run(const JobSpec& job) {
  Report report;
  report.command = command_name(job.command);
  report.n = job.n;
  report.order_requested = job.order;
  try {
    Timer total(report, "total");
    Pipeline(job, report).execute();
  } catch (const Error& e) {
    report.error = ErrorOut{std::string(error_code_name(e.code())), e.what(),
                            is_usage_error(e.code())};
  }
  return report;
}

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["n"] = r.n;
  j["order_requested"] = r.order_requested;
  j["order_certified"] = optional_json(r.order_certified, [](int v) { return v; });
  j["reality"] = r.reality;
  j["reality_failure"] = optional_json(r.reality_failure, [](const RealityFailureOut& f) {
    return nlohmann::ordered_json{{"identity", f.identity},
                                  {"monomial", f.monomial},
                                  {"coefficient", coefficient_json(f.coefficient)}};
  });
  j["levi_nondegenerate"] = optional_json(r.levi_nondegenerate, [](bool b) { return b; });
  j["signature"] = optional_json(r.signature, [](const std::array<int, 2>& s) {
    return nlohmann::ordered_json(s);
  });
  j["integrability"] = r.integrability;
  auto failures = nlohmann::ordered_json::array();
  for (const auto& f : r.integrability_failures) {
    failures.push_back({{"indices", f.indices},
                        {"monomial", f.monomial},
                        {"coefficient", coefficient_json(f.coefficient)}});
  }
  j["integrability_failures"] = failures;
  j["pseudospherical"] = r.pseudospherical;
  j["hachtroudi"] = r.hachtroudi;
  j["witness"] = optional_json(r.witness, witness_json);
  j["cross_check"] = r.cross_check;
  j["cross_check_disagreement"] = optional_json(r.cross_check_disagreement, witness_json);
  j["theta"] = optional_json(r.theta, [](const std::string& s) { return s; });
  j["pde"] = nlohmann::ordered_json(r.pde);
  j["error"] = optional_json(r.error, [](const ErrorOut& e) {
    return nlohmann::ordered_json{{"code", e.code}, {"message", e.message}, {"usage", e.usage}};
  });
  j["exit_code"] = r.exit_code();
  j["timings_ms"] = nlohmann::ordered_json(r.timings_ms);
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.n = j.at("n").get<int>();
  r.order_requested = j.at("order_requested").get<int>();
  if (!j.at("order_certified").is_null()) r.order_certified = j.at("order_certified").get<int>();
  r.reality = j.at("reality").get<std::string>();
  if (const auto& f = j.at("reality_failure"); !f.is_null()) {
    r.reality_failure = RealityFailureOut{f.at("identity").get<int>(),
                                          f.at("monomial").get<std::string>(),
                                          coefficient_from(f.at("coefficient"))};
  }
  if (!j.at("levi_nondegenerate").is_null()) {
    r.levi_nondegenerate = j.at("levi_nondegenerate").get<bool>();
  }
  if (!j.at("signature").is_null()) r.signature = j.at("signature").get<std::array<int, 2>>();
  r.integrability = j.at("integrability").get<std::string>();
  for (const auto& f : j.at("integrability_failures")) {
    r.integrability_failures.push_back({f.at("indices").get<std::array<int, 3>>(),
                                        f.at("monomial").get<std::string>(),
                                        coefficient_from(f.at("coefficient"))});
  }
  r.pseudospherical = j.at("pseudospherical").get<std::string>();
  r.hachtroudi = j.at("hachtroudi").get<std::string>();
  if (!j.at("witness").is_null()) r.witness = witness_from(j.at("witness"));
  r.cross_check = j.at("cross_check").get<std::string>();
  if (!j.at("cross_check_disagreement").is_null()) {
    r.cross_check_disagreement = witness_from(j.at("cross_check_disagreement"));
  }
  if (!j.at("theta").is_null()) r.theta = j.at("theta").get<std::string>();
  r.pde = j.at("pde").get<std::map<std::string, std::string>>();
  if (const auto& e = j.at("error"); !e.is_null()) {
    r.error = ErrorOut{e.at("code").get<std::string>(), e.at("message").get<std::string>(),
                       e.at("usage").get<bool>()};
  }
  r.timings_ms = j.at("timings_ms").get<std::map<std::string, double>>();
  return r;
}

std::string human_readable(const Report& r, bool witness) {
  std::ostringstream os;
  os << "command: " << r.command << "  n=" << r.n << "  order=" << r.order_requested << "\n";
  if (r.error) {
    os << "error [" << r.error->code << "]: " << r.error->message << "\n";
  }
  if (r.reality != "skipped") {
    os << "reality: " << r.reality;
    if (r.reality_failure) {
      os << " (identity " << r.reality_failure->identity << " fails at monomial "
         << r.reality_failure->monomial << ")";
    }
    os << "\n";
  }
  if (r.levi_nondegenerate) {
    os << "levi: " << (*r.levi_nondegenerate ? "nondegenerate" : "degenerate") << "\n";
  }
  if (r.signature) {
    os << "signature: (" << (*r.signature)[0] << ", " << (*r.signature)[1] << ")\n";
  }
  if (r.theta) os << "theta: " << *r.theta << "\n";
  for (const auto& [k, expr] : r.pde) os << "F[" << k << "] = " << expr << "\n";
  if (r.integrability != "skipped") {
    os << "integrability: " << r.integrability << "\n";
    for (const auto& f : r.integrability_failures) {
      os << "  D_" << f.indices[2] << " F_" << f.indices[0] << f.indices[1] << " != D_"
         << f.indices[1] << " F_" << f.indices[0] << f.indices[2] << " at " << f.monomial
         << "\n";
    }
  }
  auto verdict = [&](const std::string& label, const std::string& v) {
    if (v == "skipped") return;
    os << label << ": ";
    if (v == "vanishes_to_order") {
      os << "vanishes to order " << r.order_certified.value_or(0);
    } else {
      os << "non-vanishing";
    }
    os << "\n";
    if (witness && r.witness) {
      const auto& w = *r.witness;
      os << "  witness: component (" << w.component[0] << "," << w.component[1] << ","
         << w.component[2] << "," << w.component[3] << ") monomial " << w.monomial
         << " coefficient " << w.coefficient.re;
      if (w.coefficient.im != "0") os << " + (" << w.coefficient.im << ")*i";
      os << "\n";
    }
  };
  verdict("pseudospherical", r.pseudospherical);
  verdict("hachtroudi", r.hachtroudi);
  if (r.cross_check != "skipped") os << "cross-check: " << r.cross_check << "\n";
  return os.str();
}

}  // namespace crflat
