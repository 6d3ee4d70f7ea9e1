// Copyright 2026 The bnscore Authors
//
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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bnscore/cli.hpp"
#include "bnscore/csv.hpp"

namespace {

int emit(const bnscore::RunResult& result, const std::string& out_path,
         const std::string& trace_path) {
  if (result.exit_code == 0 && !out_path.empty()) {
    bnscore::write_file(out_path, result.report);
  } else {
    std::cout << result.report;
  }
  if (result.exit_code == 0 && !trace_path.empty()) {
    bnscore::write_file(trace_path, result.trace_jsonl);
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian-network structure scoring and learning"};
  app.require_subcommand(1);

  bnscore::RunConfig config;
  std::string out_path;
  std::string trace_path;
  std::string model;
  double ess = 0.0;
  double a_mu = 0.0;
  double a_w = 0.0;
  double arc_penalty = 0.0;
  std::uint64_t seed = 0;

  auto* score = app.add_subcommand("score", "Log marginal likelihood of a DAG");
  score->add_option("--data", config.data_path, "CSV data file")->required();
  score->add_option("--dag", config.dag_path, "DAG JSON file")->required();
  score->add_option("--prior", config.prior_path, "scoring prior JSON file")->required();
  auto* score_model = score->add_option("--model", model, "discrete or gaussian");
  score->add_option("--out", out_path, "write the report here instead of stdout");

  auto* learn = app.add_subcommand("learn", "Hill-climb a structure from data");
  learn->add_option("--data", config.data_path, "CSV data file")->required();
  learn->add_option("--prior", config.prior_path, "scoring prior JSON file")->required();
  auto* learn_kappa =
      learn->add_option("--alpha-arc", arc_penalty, "per-arc log penalty (default: uniform)");
  learn->add_option("--restarts", config.restarts, "restart count (first start is empty)");
  learn->add_option("--seed", seed, "PRNG seed")->required();
  learn->add_option("--max-parents", config.max_parents, "parent cap per node");
  learn->add_option("--out", out_path, "write the report here instead of stdout");
  learn->add_option("--trace", trace_path, "write the move trace here as JSON lines");

  auto* equiv = app.add_subcommand("equiv", "Independence-equivalence verdict for two DAGs");
  equiv->add_option("--dag1", config.dag_path, "first DAG JSON file")->required();
  equiv->add_option("--dag2", config.dag2_path, "second DAG JSON file")->required();
  equiv->add_option("--out", out_path, "write the report here instead of stdout");

  auto* build = app.add_subcommand("prior-build", "Scoring prior from a prior network");
  build->add_option("--network", config.network_path, "prior network JSON file")->required();
  auto* build_ess = build->add_option("--ess", ess, "effective sample size (discrete)");
  auto* build_amu = build->add_option("--amu", a_mu, "normal effective sample size (gaussian)");
  auto* build_aw = build->add_option("--aw", a_w, "Wishart degrees of freedom (gaussian)");
  build->add_option("--out", out_path, "write the prior here instead of stdout");

  auto* check = app.add_subcommand("check-consistency",
                                   "Two-route prior-density identity at random points");
  check->add_option("--prior", config.prior_path, "scoring prior JSON file")->required();
  check->add_option("--points", config.points, "number of random points");
  auto* check_seed = check->add_option("--seed", seed, "PRNG seed");
  check->add_option("--out", out_path, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  config.command = app.get_subcommands().front()->get_name();
  if (score_model->count() > 0) config.model = model;
  if (learn_kappa->count() > 0) config.arc_penalty = arc_penalty;
  if (build_ess->count() > 0) config.ess = ess;
  if (build_amu->count() > 0) config.a_mu = a_mu;
  if (build_aw->count() > 0) config.a_w = a_w;
  if (config.command == "learn" || check_seed->count() > 0) config.seed = seed;

  try {
    return emit(bnscore::run_command(config), out_path, trace_path);
  } catch (const std::exception& error) {
    std::cout << "{\"error\":{\"kind\":\"internal\",\"message\":\"" << error.what()
              << "\"}}\n";
    return 2;
  }
}
