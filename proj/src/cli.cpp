#include "qi/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "qi/algebra.hpp"
#include "qi/delay_closure.hpp"
#include "qi/matrix_io.hpp"
#include "qi/oracle.hpp"
#include "qi/qi_test.hpp"
#include "qi/reference_data.hpp"
#include "qi/sparsity_closure.hpp"
#include "qi/subset_heuristics.hpp"

namespace qi::cli {

using nlohmann::json;

json RunReport::toJson() const {
  json j = outputs;
  j["command"] = command;
  j["inputs"] = inputs;
  j["timing_ms"] = timing_ms;
  j["version"] = version;
  return j;
}

json matrixJson(const BinaryPattern& X) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < X.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < X.cols(); ++c) row.push_back(static_cast<int>(X(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrixJson(const DelayMatrix& D) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < D.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < D.cols(); ++c) {
      const double v = D(r, c);
      if (std::isinf(v))
        row.push_back(v > 0 ? "inf" : "-inf");
      else
        row.push_back(v == 0.0 ? 0.0 : v);  // no "-0.0"
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json digest(const std::string& canonical_text, Eigen::Index rows, Eigen::Index cols) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canonical_text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return {{"rows", rows}, {"cols", cols}, {"fnv1a64", hex}};
}

namespace {

json linksJson(const std::vector<Link>& links) {
  json out = json::array();
  for (const auto& [k, l] : links) out.push_back({k + 1, l + 1});
  return out;
}

json violationsJson(const QIReport& report) {
  json out = json::array();
  for (const auto& v : report.violations) {
    json item = {{"k", v.k + 1}, {"i", v.i + 1}, {"j", v.j + 1}, {"l", v.l + 1}};
    if (v.slack)
      item["slack"] = std::isinf(*v.slack) ? json("inf") : json(*v.slack);
    else
      item["slack"] = nullptr;
    out.push_back(std::move(item));
  }
  return out;
}

DelayMatrix deltaOf(const DelayMatrix& t, const DelayMatrix& ttilde) {
  DelayMatrix d(t.rows(), t.cols());
  for (Eigen::Index r = 0; r < t.rows(); ++r)
    for (Eigen::Index c = 0; c < t.cols(); ++c) d(r, c) = t(r, c) == ttilde(r, c) ? 0.0 : t(r, c) - ttilde(r, c);
  return d;
}

json nearestJson(const NearestResult& res, const DelayMatrix& ttilde) {
  json out = {{"result", matrixJson(res.t_out)},
              {"delta", matrixJson(deltaOf(res.t_out, ttilde))},
              {"objective", res.objective},
              {"solver", toString(res.solver)},
              {"iterations", res.iterations},
              {"mode", toString(res.mode)},
              {"norm", toString(res.norm)}};
  if (res.max_violation) out["max_violation"] = *res.max_violation;
  return out;
}

double defaultTolerance() {
  const char* env = std::getenv("QI_TOLERANCE");
  if (!env) return 1e-9;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0 && v <= 1e-2))
    throw ParameterError("QI_TOLERANCE must be a number in (0, 1e-2]");
  return v;
}

struct Options {
  std::string kind;
  std::string plant_path;
  std::string controller_path;
  bool as_delay = false;
  bool plain = false;
  bool reduced = false;
  double slack_tol = 0.0;
  std::string mode = "superset";
  std::string norm = "1";
  std::string method = "weights";
  std::string schedule = "step";
  double R = 1.0;
  bool trace = false;
  bool tiebreak = false;
  bool minplus = false;
  std::string target;
};

struct Inputs {
  ParsedMatrix plant;
  ParsedMatrix controller;
};

Inputs loadInputs(const Options& o, RunReport& report) {
  Inputs in{parseMatrixFile(o.plant_path, o.as_delay), parseMatrixFile(o.controller_path, o.as_delay)};
  const auto record = [&report](const char* name, const ParsedMatrix& m) {
    std::visit([&](const auto& x) { report.inputs[name] = digest(formatMatrix(x), x.rows(), x.cols()); }, m);
  };
  record("plant", in.plant);
  record("controller", in.controller);
  return in;
}

Norm parseNorm(const std::string& s) {
  if (s == "1") return Norm::One;
  if (s == "2") return Norm::Two;
  return Norm::Inf;
}

NearestMode parseMode(const std::string& s) {
  if (s == "set") return NearestMode::Set;
  if (s == "subset") return NearestMode::Subset;
  return NearestMode::Superset;
}

// Returns what --plain prints.
using Command = std::function<std::string(const Options&, RunReport&)>;

std::string runCheck(const Options& o, RunReport& report) {
  const Inputs in = loadInputs(o, report);
  QIReport qi;
  if (o.kind == "sparsity") {
    qi = isQISparsity(asPattern(in.controller), asPattern(in.plant));
  } else {
    const DelayMatrix t = asDelay(in.controller), p = asDelay(in.plant);
    requireDelay(t, "controller");
    requireDelay(p, "plant");
    qi = o.reduced ? isQIDelayReduced(t, p, o.slack_tol) : isQIDelay(t, p, o.slack_tol);
  }
  report.outputs = {{"kind", o.kind}, {"is_qi", qi.is_qi}, {"violations", violationsJson(qi)}};
  if (o.reduced) report.outputs["reduced"] = true;
  return qi.is_qi ? "true\n" : "false\n";
}

std::string runClosest(const Options& o, RunReport& report) {
  const Inputs in = loadInputs(o, report);
  if (o.kind == "sparsity") {
    const BinaryPattern K = asPattern(in.controller), G = asPattern(in.plant);
    requireBinary(K, "controller");
    if (o.mode == "superset") {
      const ClosureResult res = closestSuperset(K, G);
      report.outputs = {{"result", matrixJson(res.Zstar)},
                        {"hamming_distance", hammingDistance(res.Zstar, K)},
                        {"iterations", res.trace.iterations_used},
                        {"added_links", linksJson(res.trace.added_links)}};
      if (o.trace) {
        json iterates = json::array();
        for (const auto& Z : res.trace.iterates) iterates.push_back(matrixJson(Z));
        report.outputs["trace"] = iterates;
      }
      return formatMatrix(res.Zstar);
    }
    if (o.mode == "subset") {
      HeuristicConfig cfg;
      cfg.method = o.method == "weights" ? HeuristicMethod::Weights : HeuristicMethod::RelaxedLP;
      cfg.schedule = o.schedule == "step" ? Schedule::PerDisconnection : Schedule::PerPass;
      cfg.R = o.R;
      const SubsetResult res = closestSubset(K, G, cfg);
      report.outputs = {{"result", matrixJson(res.Z)},
                        {"removed_links", linksJson(res.removed_links)},
                        {"hamming_distance", res.hamming_distance},
                        {"method", o.method},
                        {"schedule", o.schedule},
                        {"refreshes", res.refreshes}};
      return formatMatrix(res.Z);
    }
    throw CLI::ValidationError("--mode", "sparsity constraints support only superset and subset");
  }

  const DelayMatrix ttilde = asDelay(in.controller), p = asDelay(in.plant);
  NearestResult res;
  if (o.minplus) {
    if (o.mode != "superset") throw CLI::ValidationError("--minplus", "requires --mode superset");
    res = minplusSuperset(ttilde, p, parseNorm(o.norm));
  } else {
    NearestQuery q;
    q.mode = parseMode(o.mode);
    q.norm = parseNorm(o.norm);
    q.tiebreak_secondary_one_norm = o.tiebreak;
    q.tolerance = defaultTolerance();
    res = solveClosest(ttilde, p, q);
  }
  report.outputs = nearestJson(res, ttilde);
  return formatMatrix(res.t_out);
}

std::string runOracle(const Options& o, RunReport& report) {
  const char* gate = std::getenv("QI_ENABLE_ORACLE");
  if (!gate || std::string(gate) != "1")
    throw CLI::ValidationError("oracle", "brute-force oracles are for testing; set QI_ENABLE_ORACLE=1");
  const Inputs in = loadInputs(o, report);
  if (o.target == "superset") {
    const BinaryPattern Z = oracle::exhaustiveMinimalSuperset(asPattern(in.controller), asPattern(in.plant));
    report.outputs = {{"result", matrixJson(Z)}, {"nnz", nnz(Z)}};
    return formatMatrix(Z);
  }
  if (o.target == "subset") {
    const auto best = oracle::exhaustiveMaximalSubset(asPattern(in.controller), asPattern(in.plant));
    report.outputs = {{"result", matrixJson(best.Z)}, {"optimum_distance", best.optimum_distance}};
    return formatMatrix(best.Z);
  }
  NearestQuery q;
  q.mode = parseMode(o.mode);
  q.norm = parseNorm(o.norm);
  const DelayMatrix ttilde = asDelay(in.controller), p = asDelay(in.plant);
  const auto sol = oracle::solveRationalLP(oracle::toRational(buildLP(ttilde, p, q, {true, std::nullopt})));
  report.outputs = {{"status", toString(sol.status)}, {"pivots", sol.pivots}};
  if (sol.status != LPStatus::Optimal) throw InfeasibleError("oracle lp: " + toString(sol.status));
  DelayMatrix t(ttilde.rows(), ttilde.cols());
  for (Eigen::Index k = 0; k < t.rows(); ++k)
    for (Eigen::Index l = 0; l < t.cols(); ++l) t(k, l) = sol.x[k * t.cols() + l].get_d();
  report.outputs["objective"] = sol.objective.get_d();
  report.outputs["objective_exact"] = sol.objective.get_str();
  report.outputs["result"] = matrixJson(t);
  return formatMatrix(t);
}

std::string runReproduce(const Options& o, RunReport& report) {
  if (o.target == "sparsity-example") {
    const BinaryPattern K = binIdentity(4);
    const ClosureResult r1 = closestSuperset(K, reference::plantI());
    const ClosureResult r2 = closestSuperset(K, reference::plantII());
    report.outputs = {{"K", matrixJson(K)},
                      {"G_I", matrixJson(reference::plantI())},
                      {"G_II", matrixJson(reference::plantII())},
                      {"Z_I", matrixJson(r1.Zstar)},
                      {"Z_II", matrixJson(r2.Zstar)},
                      {"iterations_I", r1.trace.iterations_used},
                      {"iterations_II", r2.trace.iterations_used},
                      {"added_links_I", linksJson(r1.trace.added_links)},
                      {"added_links_II", linksJson(r2.trace.added_links)}};
    return formatMatrix(r1.Zstar);
  }
  const DelayMatrix p = reference::propagationDelays(), ttilde = reference::transmissionDelays();
  json cells = json::array();
  for (const auto mode : {NearestMode::Subset, NearestMode::Set, NearestMode::Superset})
    for (const auto norm : {Norm::One, Norm::Two, Norm::Inf}) {
      NearestQuery q;
      q.mode = mode;
      q.norm = norm;
      q.tiebreak_secondary_one_norm = o.tiebreak;
      q.tolerance = defaultTolerance();
      cells.push_back(nearestJson(solveClosest(ttilde, p, q), ttilde));
    }
  report.outputs = {{"p", matrixJson(p)}, {"t", matrixJson(ttilde)}, {"cells", cells}};
  return formatMatrix(ttilde);
}

void addInputs(CLI::App* sub, Options& o) {
  sub->add_option("--plant", o.plant_path, "plant pattern G (n_y x n_u) or propagation delays p")->required();
  sub->add_option("--controller", o.controller_path, "controller pattern K (n_u x n_y) or transmission delays t")
      ->required();
  sub->add_flag("--as-delay", o.as_delay, "read 0/1 files as delays");
}

}  // namespace

int runCommand(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic invariance of decentralized information constraints"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Options o;
  app.add_flag("--plain", o.plain, "print the result matrix as text instead of JSON");

  auto* check = app.add_subcommand("check", "test quadratic invariance");
  check->add_option("--kind", o.kind)->required()->check(CLI::IsMember({"sparsity", "delay"}));
  addInputs(check, o);
  check->add_flag("--reduced", o.reduced, "pairwise test p >= t (square, triangle inequality)");
  check->add_option("--slack-tol", o.slack_tol, "ignore delay violations up to this slack")->check(CLI::NonNegativeNumber);
  check->add_flag("--plain", o.plain);

  auto* closest = app.add_subcommand("closest", "nearest quadratically invariant constraint");
  closest->add_option("--kind", o.kind)->required()->check(CLI::IsMember({"sparsity", "delay"}));
  addInputs(closest, o);
  closest->add_option("--mode", o.mode)->check(CLI::IsMember({"set", "subset", "superset"}));
  closest->add_option("--norm", o.norm)->check(CLI::IsMember({"1", "2", "inf"}));
  closest->add_option("--method", o.method)->check(CLI::IsMember({"weights", "relaxed-lp"}));
  closest->add_option("--schedule", o.schedule)->check(CLI::IsMember({"step", "pass"}));
  closest->add_option("--R", o.R, "delay scale for the relaxed LP")->check(CLI::PositiveNumber);
  closest->add_flag("--trace", o.trace, "include every closure iterate");
  closest->add_flag("--tiebreak-1norm", o.tiebreak, "inf-norm: minimise the 1-norm among optima");
  closest->add_flag("--minplus", o.minplus, "delay superset via the (min,+) closure");
  closest->add_flag("--plain", o.plain);

  auto* orc = app.add_subcommand("oracle", "brute-force references (testing; needs QI_ENABLE_ORACLE=1)");
  orc->add_option("target", o.target)->required()->check(CLI::IsMember({"superset", "subset", "lp"}));
  addInputs(orc, o);
  orc->add_option("--mode", o.mode)->check(CLI::IsMember({"set", "subset", "superset"}));
  orc->add_option("--norm", o.norm)->check(CLI::IsMember({"1", "inf"}));
  orc->add_flag("--plain", o.plain);

  auto* repro = app.add_subcommand("reproduce", "recompute the bundled four-subsystem examples");
  repro->add_option("example", o.target)->required()->check(CLI::IsMember({"sparsity-example", "delay-table"}));
  repro->add_flag("--tiebreak-1norm", o.tiebreak);
  repro->add_flag("--plain", o.plain);

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  RunReport report;
  {
    std::string joined;
    for (std::size_t a = 1; a < argv.size(); ++a) joined += (a > 1 ? " " : "") + argv[a];
    report.command = joined;
  }

  Command command;
  if (*check) command = runCheck;
  else if (*closest) command = runClosest;
  else if (*orc) command = runOracle;
  else command = runReproduce;

  const auto start = std::chrono::steady_clock::now();
  try {
    const std::string plain = command(o, report);
    report.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (o.plain)
      out << plain;
    else
      out << report.toJson().dump(2) << '\n';
    return kOk;
  } catch (const CLI::ValidationError& e) {
    err << "qi: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const SolverError& e) {
    err << "qi: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const Error& e) {
    err << "qi: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace qi::cli
