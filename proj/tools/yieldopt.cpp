// Copyright 2026 The yieldopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver. Exit status: 0 on success, 2 on invalid input or
// usage, 1 on internal failure or a failing `repro` check.

#include <fmt/format.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "yieldopt/engine.hpp"
#include "yieldopt/errors.hpp"
#include "yieldopt/experiments.hpp"
#include "yieldopt/instances.hpp"
#include "yieldopt/io.hpp"
#include "yieldopt/matching.hpp"
#include "yieldopt/oracle.hpp"
#include "yieldopt/policy.hpp"
#include "yieldopt/ratio.hpp"

namespace yieldopt {
namespace {

constexpr const char* kVersion = "0.1.0";

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kMalformedInput, "cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Mean and standard error of the mean.
std::pair<double, double> mean_stderr(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) return {mean, 0.0};
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / (n - 1.0) / n)};
}

ThresholdPolicy optimize(const std::string& method,
                         const RewardDistribution& dist, double f, double c,
                         double eps) {
  if (method == "dp") return optimize_thresholds_dp(dist, f, c, eps);
  if (method == "bucketed") return optimize_thresholds_bucketed(dist, f, c, eps);
  if (method == "grid") return optimize_thresholds_grid(dist, f, c, eps);
  throw Error(ErrorCode::kMalformedInput, "unknown method " + method);
}

struct ThresholdsArgs {
  std::string dist;
  double penalty = 0.0;
  double supply = 0.0;
  std::optional<double> grid;
  std::string method = "dp";
  std::string out;
};

void run_thresholds(const ThresholdsArgs& args) {
  const Json dist_json = load_json_argument(args.dist);
  const auto dist = validate(dist_from_json(dist_json), args.penalty);
  const auto problem = normalize(dist, args.penalty, args.supply, 1.0);
  const double eps = args.grid.value_or(default_grid());
  const auto policy =
      optimize(args.method, problem.dist, args.supply, problem.penalty, eps);
  Json j;
  j["schema"] = kSchemaVersion;
  j["thresholds"] = std::vector<double>(policy.thresholds().begin(),
                                        policy.thresholds().end());
  std::vector<double> reserves;
  for (std::size_t u = 1; u <= policy.segments(); ++u) {
    reserves.push_back(policy.reserve(u) + dist.min_reward());
  }
  j["reserves"] = reserves;
  j["objective_per_unit_demand"] =
      ub_continuous(problem.dist, policy.thresholds(), args.supply,
                    problem.penalty, 1.0) +
      problem.offset;
  if (problem.dist.size() == 2 && args.supply >= 1.0) {
    j["closed_form_threshold"] =
        binary_threshold(args.supply, problem.dist.cum_mass()[0],
                         problem.dist.support()[1], problem.penalty);
  }
  j["config"] = {{"dist", dist_json}, {"penalty", args.penalty},
                 {"supply", args.supply}, {"grid", eps},
                 {"method", args.method}};
  j["version"] = kVersion;
  emit(dump(j), args.out);
}

struct SimulateArgs {
  std::string instance;
  std::string dist;
  double penalty = 0.0;
  std::optional<std::uint64_t> seed;
  int seeds = 1;
  std::optional<double> grid;
  std::vector<double> thresholds;
  std::string format = "csv";
  std::string out;
};

void run_simulate(const SimulateArgs& args) {
  if (!args.seed) {
    throw Error(ErrorCode::kMalformedInput, "simulate requires --seed");
  }
  if (args.seeds < 1) throw Error(ErrorCode::kMalformedInput, "--seeds must be >= 1");
  const Json instance_json = load_json_argument(args.instance);
  const Json dist_json = load_json_argument(args.dist);
  const Instance instance = instance_from_json(instance_json);
  const auto dist = validate(dist_from_json(dist_json), args.penalty);
  const double demand = static_cast<double>(instance.total_demand());
  const double f = instance.declared_supply_factor().value_or(
      static_cast<double>(instance.total_queries()) / demand);
  if (f < 1.0) {
    throw Error(ErrorCode::kMalformedInstance, "fewer queries than total demand");
  }
  const auto problem = normalize(dist, args.penalty, f, demand);
  const double eps = args.grid.value_or(default_grid(instance.advertisers()));
  const ThresholdPolicy policy =
      args.thresholds.empty()
          ? optimize_thresholds_dp(problem.dist, f, problem.penalty, eps)
          : ThresholdPolicy(problem.dist, args.thresholds);

  std::vector<RunReport> reports;
  for (int i = 0; i < args.seeds; ++i) {
    reports.push_back(simulate(instance, policy, problem.penalty, problem.offset,
                               derive_seed(*args.seed, static_cast<std::uint64_t>(i))));
  }
  // The policy runs on rewards shifted down by r_1; report money in the
  // original units.
  const double shift = dist.min_reward();
  auto revenue = [&](const RunReport& r) {
    return r.exchange_revenue + shift * static_cast<double>(r.queries - r.delivered);
  };
  auto penalty_paid = [&](const RunReport& r) {
    return args.penalty * static_cast<double>(r.demand - r.delivered);
  };
  if (args.format == "csv") {
    std::string csv = "seed,reward,exchange_revenue,penalty_paid,fill_rate\n";
    for (const RunReport& r : reports) {
      csv += fmt::format("{},{},{},{},{}\n", *r.seed, r.reward, revenue(r),
                         penalty_paid(r), r.fill_rate());
    }
    emit(csv, args.out);
    return;
  }
  if (args.format != "json") {
    throw Error(ErrorCode::kMalformedInput, "--format must be csv or json");
  }
  Json rows = Json::array();
  std::vector<double> per_unit;
  for (const RunReport& r : reports) {
    rows.push_back({{"seed", *r.seed},
                    {"reward", r.reward},
                    {"exchange_revenue", revenue(r)},
                    {"penalty_paid", penalty_paid(r)},
                    {"fill_rate", r.fill_rate()}});
    per_unit.push_back(r.reward / demand);
  }
  const auto [mean, err] = mean_stderr(per_unit);
  Json j;
  j["schema"] = kSchemaVersion;
  j["runs"] = rows;
  j["per_unit_demand"] = {{"mean", mean}, {"stderr", err}};
  j["reference"] = {
      {"objective_per_unit_demand",
       ub_continuous(problem.dist, policy.thresholds(), f, problem.penalty, 1.0) +
           problem.offset / demand},
      {"offline_opt_per_unit_demand", offline_opt_formula(dist, f, 1.0)}};
  j["thresholds"] = std::vector<double>(policy.thresholds().begin(),
                                        policy.thresholds().end());
  j["config"] = {{"instance", instance_json}, {"dist", dist_json},
                 {"penalty", args.penalty},   {"supply", f},
                 {"seed", *args.seed},        {"seeds", args.seeds},
                 {"grid", eps}};
  j["version"] = kVersion;
  emit(dump(j), args.out);
}

struct GenArgs {
  std::string kind = "triangular";
  int m = 0;
  std::int64_t n = 0;
  double supply = 1.0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

void run_gen(const GenArgs& args) {
  if (args.m < 1 || args.n < 1) throw Error(ErrorCode::kMalformedInput, "need m, n >= 1");
  if (args.kind == "triangular") {
    if (!args.seed) throw Error(ErrorCode::kMalformedInput, "triangular requires --seed");
    emit(dump(to_json(gen_upper_triangular(args.m, args.n, args.supply, *args.seed))),
         args.out);
  } else if (args.kind == "complete") {
    emit(dump(to_json(gen_complete(args.m, args.n, args.supply))), args.out);
  } else {
    throw Error(ErrorCode::kMalformedInput, "unknown --kind " + args.kind);
  }
}

struct OracleArgs {
  std::string mode;
  std::string instance;
  std::string dist;
  double penalty = 1.0;
  double supply = 1.0;
  double demand = 1.0;
  std::optional<std::uint64_t> seed;
  std::vector<double> thresholds;
  std::int64_t t = 1000;
  std::string out;
};

void run_oracle(const OracleArgs& args) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["mode"] = args.mode;
  const auto dist = dist_from_json(load_json_argument(args.dist));
  if (args.mode == "opt-formula") {
    j["value"] = offline_opt_formula(dist, args.supply, args.demand);
  } else if (args.mode == "opt-exact" || args.mode == "online-exact") {
    const Instance instance = instance_from_json(load_json_argument(args.instance));
    validate(dist, args.penalty);
    if (args.mode == "online-exact") {
      j["value"] = online_opt_bruteforce(instance, dist, args.penalty);
    } else {
      if (!args.seed) throw Error(ErrorCode::kMalformedInput, "opt-exact requires --seed");
      const auto realized = realize(instance, dist, *args.seed);
      const double demand = static_cast<double>(instance.total_demand());
      j["value"] = offline_opt_exact(realized, args.penalty);
      j["relaxed_bound"] = offline_opt_relaxed(realized, args.penalty);
      j["formula"] = offline_opt_formula(
          dist, static_cast<double>(instance.total_queries()) / demand, demand);
      j["seed"] = *args.seed;
    }
  } else if (args.mode == "beta") {
    const ThresholdPolicy policy(dist, args.thresholds);
    const auto tight = adversary_lp_tight(policy, args.supply, args.demand, args.t);
    const auto closed = beta_closed_form(policy, args.supply, args.demand, args.t);
    double gap = 0.0;
    for (std::size_t i = 0; i < tight.beta.size(); ++i) {
      gap = std::max(gap, std::abs(tight.beta[i] - closed.beta[i]));
    }
    j["beta"] = tight.beta;
    j["alpha"] = tight.alpha();
    j["max_gap_to_closed_form"] = gap;
    j["residual"] = adversary_lp_residual(policy, args.supply, args.demand, tight);
  } else {
    throw Error(ErrorCode::kMalformedInput, "unknown --mode " + args.mode);
  }
  emit(dump(j), args.out);
}

struct RatioArgs {
  double supply = 0.0;
  double q = 0.0;
  double r = 0.0;
  double penalty = 1.0;
  std::string out;
};

void run_ratio(const RatioArgs& args) {
  const RatioReport report = binary_ratio(args.supply, args.q, args.r, args.penalty);
  Json j;
  j["schema"] = kSchemaVersion;
  j["alg_bound"] = report.alg_bound;
  j["opt"] = report.opt;
  j["ratio"] = report.ratio ? Json(*report.ratio) : Json(nullptr);
  j["case"] = report.case_label();
  j["threshold"] = report.threshold;
  j["unclamped_threshold"] = report.unclamped_threshold;
  j["config"] = {{"supply", args.supply}, {"q", args.q}, {"r", args.r},
                 {"penalty", args.penalty}};
  emit(dump(j), args.out);
}

struct WorstCaseArgs {
  double mean = 0.0;
  double penalty = 1.0;
  double supply = 2.0;
  std::optional<double> grid;
  std::string out;
};

void run_worstcase(const WorstCaseArgs& args) {
  const double eps = args.grid.value_or(default_grid());
  const WorstCaseFamily family =
      worst_case_distribution(args.mean, args.penalty, args.supply, eps);
  Json candidates = Json::array();
  for (const auto& c : family.candidates) {
    candidates.push_back({{"label", c.label},
                          {"dist", to_json(c.dist)},
                          {"best_reward_per_unit_demand", c.best_reward}});
  }
  Json j;
  j["schema"] = kSchemaVersion;
  j["candidates"] = candidates;
  j["argmin"] = family.candidates[family.argmin].label;
  j["min_reward_per_unit_demand"] = family.min_reward();
  j["config"] = {{"mean", args.mean}, {"penalty", args.penalty},
                 {"supply", args.supply}, {"grid", eps}};
  emit(dump(j), args.out);
}

struct MatchingArgs {
  int m = 0;
  std::int64_t n = 1;
  int supply = 1;
  int trials = 1;
  std::optional<std::uint64_t> seed;
  std::vector<double> weights;
  std::string out;
};

void run_matching(const MatchingArgs& args) {
  if (!args.seed) throw Error(ErrorCode::kMalformedInput, "matching requires --seed");
  if (args.m < 1 || args.n < 1) throw Error(ErrorCode::kMalformedInput, "need m, n >= 1");
  const auto estimate =
      empirical_ratio(args.m, args.n, args.supply, args.weights, args.trials, *args.seed);
  std::string csv = "trial,weight,ratio\n";
  for (std::size_t i = 0; i < estimate.trials.size(); ++i) {
    csv += fmt::format("{},{},{}\n", i, estimate.weights[i], estimate.trials[i]);
  }
  emit(csv, args.out);
}

int run_repro(const std::string& name) {
  bool all_pass = true;
  for (const auto& info : experiments()) {
    if (name != "all" && info.name != name) continue;
    const ExperimentResult result = run_experiment(info.name);
    std::cout << format_result(result) << '\n' << std::flush;
    all_pass = all_pass && result.pass;
  }
  if (name != "all") {
    bool known = false;
    for (const auto& info : experiments()) known = known || info.name == name;
    if (!known) run_experiment(name);  // throws the usage error
  }
  return all_pass ? 0 : 1;
}

void report_error(std::string_view code, const std::string& message) {
  const Json j = {{"error", code}, {"message", message}};
  std::cerr << j.dump() << '\n';
}

int run(int argc, char** argv) {
  CLI::App app{"Reserve prices and contract allocation against an ad exchange"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ThresholdsArgs th;
  auto* thresholds = app.add_subcommand("thresholds", "optimize SR thresholds");
  thresholds->add_option("--dist", th.dist, "distribution JSON file or inline JSON")->required();
  thresholds->add_option("--penalty", th.penalty, "penalty per undelivered impression")->required();
  thresholds->add_option("--supply", th.supply, "supply factor f")->required();
  thresholds->add_option("--grid", th.grid, "threshold grid spacing (default 1/200)");
  thresholds->add_option("--method", th.method, "dp | bucketed | grid");
  thresholds->add_option("--out", th.out, "output path (default stdout)");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "run the threshold policy");
  simulate_cmd->add_option("--instance", sim.instance, "instance JSON")->required();
  simulate_cmd->add_option("--dist", sim.dist, "distribution JSON")->required();
  simulate_cmd->add_option("--penalty", sim.penalty)->required();
  simulate_cmd->add_option("--seed", sim.seed, "root seed (required)");
  simulate_cmd->add_option("--seeds", sim.seeds, "number of runs");
  simulate_cmd->add_option("--grid", sim.grid, "grid spacing (default 1/m)");
  simulate_cmd->add_option("--thresholds", sim.thresholds, "fixed thresholds instead of optimizing");
  simulate_cmd->add_option("--format", sim.format, "csv | json");
  simulate_cmd->add_option("--out", sim.out);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance");
  gen_cmd->add_option("--kind", gen.kind, "triangular | complete");
  gen_cmd->add_option("--m", gen.m, "advertisers")->required();
  gen_cmd->add_option("--n", gen.n, "demand per advertiser")->required();
  gen_cmd->add_option("--supply", gen.supply, "supply factor f")->required();
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--out", gen.out);

  OracleArgs orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "reference values");
  oracle_cmd->add_option("--mode", orc.mode, "opt-formula | opt-exact | online-exact | beta")
      ->required();
  oracle_cmd->add_option("--dist", orc.dist)->required();
  oracle_cmd->add_option("--instance", orc.instance);
  oracle_cmd->add_option("--penalty", orc.penalty);
  oracle_cmd->add_option("--supply", orc.supply);
  oracle_cmd->add_option("--demand", orc.demand);
  oracle_cmd->add_option("--seed", orc.seed);
  oracle_cmd->add_option("--thresholds", orc.thresholds);
  oracle_cmd->add_option("--t", orc.t);
  oracle_cmd->add_option("--out", orc.out);

  RatioArgs rat;
  auto* ratio_cmd = app.add_subcommand("ratio", "two-point competitive ratio");
  ratio_cmd->add_option("--supply", rat.supply)->required();
  ratio_cmd->add_option("--q", rat.q)->required();
  ratio_cmd->add_option("--r", rat.r)->required();
  ratio_cmd->add_option("--penalty", rat.penalty);
  ratio_cmd->add_option("--out", rat.out);

  WorstCaseArgs wc;
  auto* worst_cmd = app.add_subcommand("worstcase", "fixed-mean worst-case distribution");
  worst_cmd->add_option("--mean", wc.mean)->required();
  worst_cmd->add_option("--penalty", wc.penalty);
  worst_cmd->add_option("--supply", wc.supply);
  worst_cmd->add_option("--grid", wc.grid);
  worst_cmd->add_option("--out", wc.out);

  MatchingArgs mat;
  auto* matching_cmd = app.add_subcommand("matching", "perturbed greedy on triangular instances");
  matching_cmd->add_option("--m", mat.m)->required();
  matching_cmd->add_option("--n", mat.n);
  matching_cmd->add_option("--supply", mat.supply, "integer supply factor");
  matching_cmd->add_option("--trials", mat.trials);
  matching_cmd->add_option("--seed", mat.seed);
  matching_cmd->add_option("--weights", mat.weights, "per-advertiser weights");
  matching_cmd->add_option("--out", mat.out);

  std::string repro_name;
  auto* repro_cmd = app.add_subcommand("repro", "run a named acceptance experiment");
  repro_cmd->add_option("name", repro_name, "experiment name or 'all'")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.what());
    return 2;
  }

  try {
    if (*thresholds) run_thresholds(th);
    if (*simulate_cmd) run_simulate(sim);
    if (*gen_cmd) run_gen(gen);
    if (*oracle_cmd) run_oracle(orc);
    if (*ratio_cmd) run_ratio(rat);
    if (*worst_cmd) run_worstcase(wc);
    if (*matching_cmd) run_matching(mat);
    if (*repro_cmd) return run_repro(repro_name);
  } catch (const Error& e) {
    report_error(error_name(e.code()), e.what());
    return 2;
  } catch (const std::exception& e) {
    report_error("InternalError", e.what());
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace yieldopt

int main(int argc, char** argv) { return yieldopt::run(argc, argv); }
