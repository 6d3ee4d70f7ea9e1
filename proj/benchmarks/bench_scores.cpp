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

#include <benchmark/benchmark.h>

#include <vector>

#include "bnscore/dag.hpp"
#include "bnscore/discrete_score.hpp"
#include "bnscore/gaussian_score.hpp"
#include "bnscore/rng.hpp"
#include "bnscore/search.hpp"
#include "bnscore/transforms.hpp"

namespace {

using namespace bnscore;

std::vector<std::string> names(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("X" + std::to_string(i));
  return out;
}

DirichletJointPrior discrete_prior(const DiscreteScheme& scheme, Rng& rng) {
  std::vector<double> table(scheme.state_count());
  double sum = 0.0;
  for (double& p : table) {
    p = rng.uniform(0.2, 1.0);
    sum += p;
  }
  for (double& p : table) p /= sum;
  return DirichletJointPrior(4.0, JointDiscreteParams(scheme, std::move(table)));
}

DiscreteDataset discrete_data(const DiscreteScheme& scheme, std::size_t m, Rng& rng) {
  std::vector<int> cells;
  for (std::size_t l = 0; l < m * static_cast<std::size_t>(scheme.size()); ++l) {
    cells.push_back(rng.uniform_int(0, 1));
  }
  return DiscreteDataset(scheme, names(scheme.size()), std::move(cells));
}

void BM_bde_score(benchmark::State& state) {
  Rng rng(1);
  const DiscreteScheme scheme({2, 2, 2, 2});
  const auto prior = discrete_prior(scheme, rng);
  const auto data = discrete_data(scheme, static_cast<std::size_t>(state.range(0)), rng);
  const Dag dag(names(4), {{0, 1}, {1, 2}, {0, 3}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_score_bde(dag, data, prior));
  }
}
BENCHMARK(BM_bde_score)->Arg(100)->Arg(1000);

void BM_bge_score(benchmark::State& state) {
  Rng rng(2);
  const int n = 4;
  std::vector<double> mu0(n, 0.0);
  const NormalWishartPrior prior(mu0, 1.0, Matrix::identity(n), n + 2.0);
  std::vector<double> cells;
  for (int l = 0; l < state.range(0) * n; ++l) cells.push_back(rng.normal());
  const GaussianDataset data(names(n), std::move(cells));
  const Dag dag(names(n), {{0, 1}, {1, 2}, {0, 3}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_score_bge(dag, data, prior));
  }
}
BENCHMARK(BM_bge_score)->Arg(100)->Arg(1000);

void BM_family_counts(benchmark::State& state) {
  Rng rng(3);
  const DiscreteScheme scheme({2, 2, 2, 2});
  const auto data = discrete_data(scheme, static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(counts(data, 0, {1, 2}));
  }
}
BENCHMARK(BM_family_counts)->Arg(1000)->Arg(10000);

void BM_enumerate_dags_4(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_dags(4));
  }
}
BENCHMARK(BM_enumerate_dags_4);

void BM_covered_reversal_bfs(benchmark::State& state) {
  const auto vars = names(5);
  std::vector<int> forward{0, 1, 2, 3, 4};
  std::vector<int> backward{4, 3, 2, 1, 0};
  const Dag a = complete_dag(vars, forward);
  const Dag b = complete_dag(vars, backward);
  for (auto _ : state) {
    benchmark::DoNotOptimize(covered_reversal_sequence(a, b));
  }
}
BENCHMARK(BM_covered_reversal_bfs);

void BM_hill_climb_discrete(benchmark::State& state) {
  Rng rng(4);
  const DiscreteScheme scheme({2, 2, 2});
  const auto prior = discrete_prior(scheme, rng);
  const auto data = discrete_data(scheme, 200, rng);
  SearchConfig config;
  config.seed = 5;
  config.restarts = 3;
  config.max_parents = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hill_climb(data, prior, StructurePrior::uniform(), config));
  }
}
BENCHMARK(BM_hill_climb_discrete);

void BM_discrete_transform_round_trip(benchmark::State& state) {
  Rng rng(6);
  const DiscreteScheme scheme({2, 3, 2, 2});
  std::vector<double> table(scheme.state_count());
  double sum = 0.0;
  for (double& p : table) {
    p = rng.uniform(0.2, 1.0);
    sum += p;
  }
  for (double& p : table) p /= sum;
  const JointDiscreteParams joint(scheme, std::move(table));
  const std::vector<int> order{2, 0, 3, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(conditionals_to_joint(joint_to_conditionals(joint, order)));
  }
}
BENCHMARK(BM_discrete_transform_round_trip);

}  // namespace

BENCHMARK_MAIN();
