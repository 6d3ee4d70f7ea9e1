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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "bnscore/dag.hpp"
#include "bnscore/discrete_score.hpp"
#include "bnscore/gaussian_score.hpp"

namespace bnscore {

// Unnormalized log structure prior: uniform, or a per-arc log penalty.
class StructurePrior {
 public:
  static StructurePrior uniform();
  static StructurePrior arc_penalty(double kappa);

  double log_prior(const Dag& dag) const;
  // Log-prior change per added arc (zero in uniform mode).
  double per_arc_log() const { return penalize_ ? kappa_ : 0.0; }

 private:
  StructurePrior(bool penalize, double kappa) : penalize_(penalize), kappa_(kappa) {}
  bool penalize_;
  double kappa_;
};

struct SearchConfig {
  int max_parents = 5;
  int restarts = 1;
  std::uint64_t seed = 0;
  double tolerance = 1e-12;  // minimum strict improvement
};

// Cached unit of score decomposability.
struct FamilyScore {
  int node = 0;
  std::vector<int> parents;  // canonical sorted form
  double log_score = 0.0;
};

// Decomposable data score: the total is a sum of per-(node, parent set)
// terms.  family_score memoizes by canonical sorted parent set behind a
// lock; inserts are idempotent, so concurrent queries behave as if each
// family were computed once.
class ScoreModel {
 public:
  virtual ~ScoreModel() = default;

  int variable_count() const { return n_; }
  const std::vector<std::string>& names() const { return names_; }

  double family_score(int node, const std::vector<int>& parents) const;
  double total_score(const Dag& dag) const;

  // Per-family decomposition of a structure's score.
  std::vector<FamilyScore> family_decomposition(const Dag& dag) const;

 protected:
  ScoreModel(int n, std::vector<std::string> names) : n_(n), names_(std::move(names)) {}
  virtual double compute_family(int node, const std::vector<int>& parents) const = 0;

 private:
  int n_;
  std::vector<std::string> names_;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::pair<int, std::vector<int>>, double> cache_;
};

class DiscreteScoreModel final : public ScoreModel {
 public:
  DiscreteScoreModel(DiscreteDataset data, DirichletJointPrior prior);

 protected:
  double compute_family(int node, const std::vector<int>& parents) const override;

 private:
  DiscreteDataset data_;
  DirichletJointPrior prior_;
};

class GaussianScoreModel final : public ScoreModel {
 public:
  GaussianScoreModel(GaussianDataset data, NormalWishartPrior prior);

 protected:
  double compute_family(int node, const std::vector<int>& parents) const override;

 private:
  GaussianSufficientStats stats_;
  NormalWishartPrior prior_;
};

// Unnormalized log posterior: log p(structure) + log p(data | structure).
double log_posterior(const Dag& dag, const ScoreModel& model, const StructurePrior& sprior);
double log_posterior(const Dag& dag, const DiscreteDataset& data,
                     const DirichletJointPrior& prior, const StructurePrior& sprior);
double log_posterior(const Dag& dag, const GaussianDataset& data,
                     const NormalWishartPrior& prior, const StructurePrior& sprior);

// All labeled DAGs on n <= 5 nodes, deterministic order (capacity error
// beyond; meant as a test oracle and for exhaustive posteriors).
std::vector<Dag> enumerate_dags(const std::vector<std::string>& names);
std::vector<Dag> enumerate_dags(int n);

// Partition into independence-equivalence classes; classes ordered by
// first member, members in input order.  Returns indices into the input.
std::vector<std::vector<std::size_t>> group_by_equivalence(const std::vector<Dag>& dags);

struct TraceEntry {
  int step = 0;
  std::string move;  // "start", "add A->B", "delete A->B", "reverse A->B"
  double score = 0.0;
};

struct HillClimbResult {
  Dag dag;
  double log_score = 0.0;
  std::vector<TraceEntry> trace;  // winning restart, strictly increasing
};

// Greedy best-first over add/delete/reverse moves; first restart starts
// from the empty graph, later restarts from seeded random DAGs.  Only
// strict improvements above the tolerance are accepted; ties among moves
// break lexicographically on (move kind, from, to) with add < delete <
// reverse.
HillClimbResult hill_climb(const ScoreModel& model, const StructurePrior& sprior,
                           const SearchConfig& config);
HillClimbResult hill_climb(const DiscreteDataset& data, const DirichletJointPrior& prior,
                           const StructurePrior& sprior, const SearchConfig& config);
HillClimbResult hill_climb(const GaussianDataset& data, const NormalWishartPrior& prior,
                           const StructurePrior& sprior, const SearchConfig& config);

}  // namespace bnscore
