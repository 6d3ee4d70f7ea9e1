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

#include "bnscore/cli.hpp"

#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "bnscore/csv.hpp"
#include "bnscore/dag.hpp"
#include "bnscore/discrete_score.hpp"
#include "bnscore/elicitation.hpp"
#include "bnscore/error.hpp"
#include "bnscore/gaussian_score.hpp"
#include "bnscore/json_io.hpp"
#include "bnscore/search.hpp"

namespace bnscore {

namespace {

using Json = nlohmann::ordered_json;

// Reports carry 12 significant digits; round-tripping through the printed
// form keeps the JSON encoder from emitting longer representations.
double round12(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return std::strtod(buffer, nullptr);
}

Json dag_value(const Dag& dag) {
  return Json::parse(dag_to_json(dag));
}

void require_field(bool present, const std::string& what) {
  require(present, ErrorKind::usage, what);
}

std::string model_name(const NamedScoringPrior& prior) {
  return std::holds_alternative<NamedDiscretePrior>(prior) ? "discrete" : "gaussian";
}

NamedScoringPrior load_prior(const RunConfig& config) {
  require_field(!config.prior_path.empty(), "--prior is required");
  NamedScoringPrior prior = prior_from_json(read_file(config.prior_path));
  if (config.model) {
    require(*config.model == model_name(prior), ErrorKind::usage,
            "--model " + *config.model + " does not match the prior file (" +
                model_name(prior) + ")");
  }
  return prior;
}

DiscreteDataset load_aligned_discrete(const std::string& path,
                                      const NamedDiscretePrior& prior) {
  DiscreteDataset data = reorder_columns(load_discrete_csv(path), prior.names);
  return with_scheme(data, prior.prior.scheme());
}

GaussianDataset load_aligned_gaussian(const std::string& path,
                                      const NamedGaussianPrior& prior) {
  return reorder_columns(load_continuous_csv(path), prior.names);
}

Json run_score(const RunConfig& config) {
  const NamedScoringPrior prior = load_prior(config);
  require_field(!config.data_path.empty(), "--data is required");
  require_field(!config.dag_path.empty(), "--dag is required");
  const Dag dag = dag_from_json(read_file(config.dag_path));

  Json report;
  report["command"] = "score";
  report["model"] = model_name(prior);
  if (const auto* discrete = std::get_if<NamedDiscretePrior>(&prior)) {
    const DiscreteDataset data = load_aligned_discrete(config.data_path, *discrete);
    require(dag.names() == discrete->names, ErrorKind::usage,
            "dag and prior disagree on variable names");
    const double family = log_score_bde(dag, data, discrete->prior);
    const double ratio = log_score_bde_ratio(dag, data, discrete->prior);
    report["m"] = data.case_count();
    report["log_score"] = round12(family);
    report["log_score_family"] = round12(family);
    report["log_score_ratio"] = round12(ratio);
    report["cross_check_difference"] = round12(family - ratio);
  } else {
    const auto& gaussian = std::get<NamedGaussianPrior>(prior);
    const GaussianDataset data = load_aligned_gaussian(config.data_path, gaussian);
    require(dag.names() == gaussian.names, ErrorKind::usage,
            "dag and prior disagree on variable names");
    const double ratio = log_score_bge(dag, data, gaussian.prior);
    // Independent route: one-step-ahead predictives through the conjugate
    // posterior chain.
    double prequential = 0.0;
    for (std::size_t l = 0; l < data.case_count(); ++l) {
      const NormalWishartPrior updated =
          posterior_update(gaussian.prior, sufficient_stats(data.prefix(l)));
      std::vector<double> row(data.row(l).begin(), data.row(l).end());
      prequential += log_score_bge(dag, GaussianDataset(data.names(), std::move(row)), updated);
    }
    report["m"] = data.case_count();
    report["log_score"] = round12(ratio);
    report["log_score_ratio"] = round12(ratio);
    report["log_score_prequential"] = round12(prequential);
    report["cross_check_difference"] = round12(ratio - prequential);
  }
  return report;
}

Json run_learn(const RunConfig& config, std::string& trace_jsonl) {
  const NamedScoringPrior prior = load_prior(config);
  require_field(!config.data_path.empty(), "--data is required");
  require_field(config.seed.has_value(), "--seed is required for learn");

  SearchConfig search;
  search.max_parents = config.max_parents;
  search.restarts = config.restarts;
  search.seed = *config.seed;
  const StructurePrior sprior = config.arc_penalty
                                    ? StructurePrior::arc_penalty(*config.arc_penalty)
                                    : StructurePrior::uniform();

  HillClimbResult result = [&] {
    if (const auto* discrete = std::get_if<NamedDiscretePrior>(&prior)) {
      const DiscreteDataset data = load_aligned_discrete(config.data_path, *discrete);
      return hill_climb(data, discrete->prior, sprior, search);
    }
    const auto& gaussian = std::get<NamedGaussianPrior>(prior);
    const GaussianDataset data = load_aligned_gaussian(config.data_path, gaussian);
    return hill_climb(data, gaussian.prior, sprior, search);
  }();

  Json report;
  report["command"] = "learn";
  report["model"] = model_name(prior);
  report["seed"] = *config.seed;
  report["restarts"] = config.restarts;
  report["log_posterior"] = round12(result.log_score);
  report["dag"] = dag_value(result.dag);
  Json trace = Json::array();
  for (const TraceEntry& entry : result.trace) {
    Json line;
    line["step"] = entry.step;
    line["move"] = entry.move;
    line["score"] = round12(entry.score);
    trace_jsonl += line.dump();
    trace_jsonl += '\n';
    trace.push_back(std::move(line));
  }
  report["trace"] = std::move(trace);
  return report;
}

Json run_equiv(const RunConfig& config) {
  require_field(!config.dag_path.empty(), "--dag1 is required");
  require_field(!config.dag2_path.empty(), "--dag2 is required");
  const Dag d1 = dag_from_json(read_file(config.dag_path));
  const Dag d2 = dag_from_json(read_file(config.dag2_path));
  const bool equivalent = independence_equivalent(d1, d2);

  Json report;
  report["command"] = "equiv";
  report["equivalent"] = equivalent;
  if (equivalent) {
    const auto sequence = covered_reversal_sequence(d1, d2);
    require(sequence.has_value(), ErrorKind::numeric,
            "equivalent graphs must be reachable by covered reversals");
    Json reversals = Json::array();
    for (const Arc& arc : *sequence) {
      reversals.push_back({d1.names()[static_cast<std::size_t>(arc.from)],
                           d1.names()[static_cast<std::size_t>(arc.to)]});
    }
    report["reversals"] = std::move(reversals);
  } else {
    report["reversals"] = nullptr;
  }
  return report;
}

Json run_prior_build(const RunConfig& config) {
  require_field(!config.network_path.empty(), "--network is required");
  const PriorNetwork network = network_from_json(read_file(config.network_path));
  if (const auto* discrete = std::get_if<DiscretePriorNetwork>(&network)) {
    require_field(config.ess.has_value(), "--ess is required for a discrete prior network");
    const NamedDiscretePrior built{discrete->dag().names(),
                                   discrete_prior_from_network(*discrete, *config.ess)};
    return Json::parse(prior_to_json(built));
  }
  const auto& gaussian = std::get<GaussianPriorNetwork>(network);
  require_field(config.a_mu.has_value() && config.a_w.has_value(),
                "--amu and --aw are required for a gaussian prior network");
  const NamedGaussianPrior built{
      gaussian.dag().names(),
      gaussian_prior_from_network(gaussian, *config.a_mu, *config.a_w)};
  return Json::parse(prior_to_json(built));
}

Json run_check_consistency(const RunConfig& config) {
  const NamedScoringPrior prior = load_prior(config);
  require(config.points > 0, ErrorKind::usage, "--points must be positive");
  const std::uint64_t seed = config.seed.value_or(0);

  Json report;
  report["command"] = "check-consistency";
  report["model"] = model_name(prior);
  report["points"] = config.points;
  report["seed"] = seed;
  const double gap =
      std::holds_alternative<NamedDiscretePrior>(prior)
          ? dirichlet_consistency_max_gap(std::get<NamedDiscretePrior>(prior).prior,
                                          config.points, seed)
          : normal_wishart_consistency_max_gap(std::get<NamedGaussianPrior>(prior).prior,
                                               config.points, seed);
  report["max_abs_deviation"] = round12(gap);
  return report;
}

}  // namespace

RunResult run_command(const RunConfig& config) {
  RunResult result;
  try {
    Json report;
    if (config.command == "score") {
      report = run_score(config);
    } else if (config.command == "learn") {
      report = run_learn(config, result.trace_jsonl);
    } else if (config.command == "equiv") {
      report = run_equiv(config);
    } else if (config.command == "prior-build") {
      report = run_prior_build(config);
    } else if (config.command == "check-consistency") {
      report = run_check_consistency(config);
    } else {
      throw Error(ErrorKind::usage, "unknown command: " + config.command);
    }
    result.report = report.dump() + "\n";
  } catch (const Error& error) {
    Json report;
    report["error"] = {{"kind", to_string(error.kind())}, {"message", error.what()}};
    result.exit_code = 1;
    result.report = report.dump() + "\n";
    result.trace_jsonl.clear();
  }
  return result;
}

}  // namespace bnscore
