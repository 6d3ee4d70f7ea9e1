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

#include "bnscore/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bnscore/error.hpp"
#include "bnscore/rng.hpp"

namespace bnscore {

StructurePrior StructurePrior::uniform() { return StructurePrior(false, 0.0); }

StructurePrior StructurePrior::arc_penalty(double kappa) {
  require(std::isfinite(kappa), ErrorKind::usage, "arc penalty must be finite");
  return StructurePrior(true, kappa);
}

double StructurePrior::log_prior(const Dag& dag) const {
  return penalize_ ? kappa_ * static_cast<double>(dag.arc_count()) : 0.0;
}

double ScoreModel::family_score(int node, const std::vector<int>& parents) const {
  std::vector<int> canonical = parents;
  std::sort(canonical.begin(), canonical.end());
  const auto key = std::pair(node, std::move(canonical));
  {
    const std::lock_guard lock(cache_mutex_);
    if (const auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  // Computed outside the lock; a racing duplicate computes the same value,
  // and emplace keeps whichever landed first.
  const double value = compute_family(node, key.second);
  const std::lock_guard lock(cache_mutex_);
  return cache_.emplace(key, value).first->second;
}

double ScoreModel::total_score(const Dag& dag) const {
  require(dag.size() == n_, ErrorKind::usage, "dag dimension must match the model");
  double total = 0.0;
  for (int i = 0; i < n_; ++i) total += family_score(i, dag.parents(i));
  return total;
}

std::vector<FamilyScore> ScoreModel::family_decomposition(const Dag& dag) const {
  require(dag.size() == n_, ErrorKind::usage, "dag dimension must match the model");
  std::vector<FamilyScore> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    out.push_back({i, dag.parents(i), family_score(i, dag.parents(i))});
  }
  return out;
}

DiscreteScoreModel::DiscreteScoreModel(DiscreteDataset data, DirichletJointPrior prior)
    : ScoreModel(data.scheme().size(), data.names()),
      data_(std::move(data)),
      prior_(std::move(prior)) {
  require(data_.scheme() == prior_.scheme(), ErrorKind::usage,
          "dataset and prior disagree on cardinalities");
}

double DiscreteScoreModel::compute_family(int node, const std::vector<int>& parents) const {
  return log_family_score_bde(data_, prior_, node, parents);
}

GaussianScoreModel::GaussianScoreModel(GaussianDataset data, NormalWishartPrior prior)
    : ScoreModel(data.variable_count(), data.names()),
      stats_(sufficient_stats(data)),
      prior_(std::move(prior)) {
  require(static_cast<int>(stats_.mean.size()) == prior_.variable_count(), ErrorKind::usage,
          "dataset and prior disagree on dimension");
}

double GaussianScoreModel::compute_family(int node, const std::vector<int>& parents) const {
  return log_family_score_bge(stats_, prior_, node, parents);
}

double log_posterior(const Dag& dag, const ScoreModel& model, const StructurePrior& sprior) {
  require(dag.names() == model.names(), ErrorKind::usage,
          "dag and model disagree on variable names");
  return sprior.log_prior(dag) + model.total_score(dag);
}

double log_posterior(const Dag& dag, const DiscreteDataset& data,
                     const DirichletJointPrior& prior, const StructurePrior& sprior) {
  return log_posterior(dag, DiscreteScoreModel(data, prior), sprior);
}

double log_posterior(const Dag& dag, const GaussianDataset& data,
                     const NormalWishartPrior& prior, const StructurePrior& sprior) {
  return log_posterior(dag, GaussianScoreModel(data, prior), sprior);
}

std::vector<Dag> enumerate_dags(const std::vector<std::string>& names) {
  const int n = static_cast<int>(names.size());
  require(n >= 1 && n <= 5, ErrorKind::capacity,
          "exhaustive enumeration supports 1 to 5 nodes");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<Dag> out;
  // Each unordered pair is absent, forward, or backward; filter the
  // 3^(n choose 2) assignments for acyclicity.
  std::vector<int> state(pairs.size(), 0);
  for (;;) {
    std::vector<Arc> arcs;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (state[p] == 1) arcs.push_back({pairs[p].first, pairs[p].second});
      if (state[p] == 2) arcs.push_back({pairs[p].second, pairs[p].first});
    }
    try {
      out.emplace_back(names, arcs);
    } catch (const Error&) {
      // cyclic assignment; skip
    }
    std::size_t p = 0;
    while (p < state.size() && state[p] == 2) state[p++] = 0;
    if (p == state.size()) break;
    ++state[p];
  }
  return out;
}

std::vector<Dag> enumerate_dags(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("X" + std::to_string(i));
  return enumerate_dags(names);
}

std::vector<std::vector<std::size_t>> group_by_equivalence(const std::vector<Dag>& dags) {
  std::vector<std::vector<std::size_t>> classes;
  std::map<std::string, std::size_t> index_by_key;
  for (std::size_t i = 0; i < dags.size(); ++i) {
    if (!dags.empty()) {
      require(dags[i].names() == dags[0].names(), ErrorKind::usage,
              "all graphs must share one variable set");
    }
    // Skeleton plus v-structures is a complete equivalence invariant, so a
    // serialized form works as the class key.
    std::ostringstream key;
    for (const auto& [a, b] : skeleton(dags[i])) key << a << ',' << b << ';';
    key << '|';
    for (const auto& [a, c, b] : v_structures(dags[i])) key << a << ',' << c << ',' << b << ';';
    const auto [it, inserted] = index_by_key.try_emplace(key.str(), classes.size());
    if (inserted) classes.emplace_back();
    classes[it->second].push_back(i);
  }
  return classes;
}

namespace {

enum class MoveKind { add = 0, remove = 1, reverse = 2 };

struct Move {
  MoveKind kind;
  int from;
  int to;

  bool operator<(const Move& other) const {
    return std::tuple(static_cast<int>(kind), from, to) <
           std::tuple(static_cast<int>(other.kind), other.from, other.to);
  }
};

std::string move_label(const Move& move, const std::vector<std::string>& names) {
  const char* verb = move.kind == MoveKind::add      ? "add"
                     : move.kind == MoveKind::remove ? "delete"
                                                     : "reverse";
  return std::string(verb) + " " + names[static_cast<std::size_t>(move.from)] + "->" +
         names[static_cast<std::size_t>(move.to)];
}

std::vector<int> with_parent(const std::vector<int>& parents, int extra) {
  std::vector<int> out = parents;
  out.insert(std::upper_bound(out.begin(), out.end(), extra), extra);
  return out;
}

std::vector<int> without_parent(const std::vector<int>& parents, int removed) {
  std::vector<int> out;
  for (int p : parents) {
    if (p != removed) out.push_back(p);
  }
  return out;
}

// Score change of a single move; only the families of the endpoints are
// touched.
double move_gain(const Dag& dag, const Move& move, const ScoreModel& model,
                 const StructurePrior& sprior) {
  double gain = 0.0;
  switch (move.kind) {
    case MoveKind::add:
      gain = model.family_score(move.to, with_parent(dag.parents(move.to), move.from)) -
             model.family_score(move.to, dag.parents(move.to));
      gain += sprior.per_arc_log();
      break;
    case MoveKind::remove:
      gain = model.family_score(move.to, without_parent(dag.parents(move.to), move.from)) -
             model.family_score(move.to, dag.parents(move.to));
      gain -= sprior.per_arc_log();
      break;
    case MoveKind::reverse:
      gain = model.family_score(move.to, without_parent(dag.parents(move.to), move.from)) -
             model.family_score(move.to, dag.parents(move.to)) +
             model.family_score(move.from, with_parent(dag.parents(move.from), move.to)) -
             model.family_score(move.from, dag.parents(move.from));
      break;
  }
  return gain;
}

Dag apply_move(const Dag& dag, const Move& move) {
  switch (move.kind) {
    case MoveKind::add:
      return dag.with_arc(move.from, move.to);
    case MoveKind::remove:
      return dag.without_arc(move.from, move.to);
    case MoveKind::reverse:
      return dag.with_arc_reversed(move.from, move.to);
  }
  return dag;  // unreachable
}

bool move_is_legal(const Dag& dag, const Move& move, int max_parents) {
  switch (move.kind) {
    case MoveKind::add:
      if (dag.has_arc(move.from, move.to) || dag.has_arc(move.to, move.from)) return false;
      if (static_cast<int>(dag.parents(move.to).size()) >= max_parents) return false;
      return !dag.path_exists(move.to, move.from);
    case MoveKind::remove:
      return dag.has_arc(move.from, move.to);
    case MoveKind::reverse: {
      if (!dag.has_arc(move.from, move.to)) return false;
      if (static_cast<int>(dag.parents(move.from).size()) + 1 > max_parents) return false;
      // After dropping from->to, a surviving directed path from->to would
      // close a cycle with the reversed arc.
      const Dag dropped = dag.without_arc(move.from, move.to);
      return !dropped.path_exists(move.from, move.to);
    }
  }
  return false;
}

Dag random_start(const std::vector<std::string>& names, int max_parents, Rng& rng) {
  const int n = static_cast<int>(names.size());
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  Dag dag(names);
  for (int q = 1; q < n; ++q) {
    for (int p = 0; p < q; ++p) {
      const int from = order[static_cast<std::size_t>(p)];
      const int to = order[static_cast<std::size_t>(q)];
      if (static_cast<int>(dag.parents(to).size()) >= max_parents) break;
      if (rng.uniform() < 0.5) dag = dag.with_arc(from, to);
    }
  }
  return dag;
}

struct ClimbOutcome {
  Dag dag;
  double score = 0.0;
  std::vector<TraceEntry> trace;
};

ClimbOutcome climb_from(Dag dag, const ScoreModel& model, const StructurePrior& sprior,
                        const SearchConfig& config) {
  const int n = model.variable_count();
  ClimbOutcome outcome{dag, log_posterior(dag, model, sprior), {}};
  outcome.trace.push_back({0, "start", outcome.score});
  for (int step = 1;; ++step) {
    bool found = false;
    double best_gain = 0.0;
    Move best_move{MoveKind::add, 0, 0};
    for (int kind = 0; kind < 3; ++kind) {
      for (int from = 0; from < n; ++from) {
        for (int to = 0; to < n; ++to) {
          if (from == to) continue;
          const Move move{static_cast<MoveKind>(kind), from, to};
          if (!move_is_legal(outcome.dag, move, config.max_parents)) continue;
          const double gain = move_gain(outcome.dag, move, model, sprior);
          if (gain <= config.tolerance) continue;
          // Strictly better gain wins; exact ties resolve to the smaller
          // (kind, from, to), which is the enumeration order.
          if (!found || gain > best_gain) {
            found = true;
            best_gain = gain;
            best_move = move;
          }
        }
      }
    }
    if (!found) break;
    outcome.dag = apply_move(outcome.dag, best_move);
    outcome.score = log_posterior(outcome.dag, model, sprior);
    outcome.trace.push_back({step, move_label(best_move, model.names()), outcome.score});
  }
  return outcome;
}

}  // namespace

HillClimbResult hill_climb(const ScoreModel& model, const StructurePrior& sprior,
                           const SearchConfig& config) {
  require(config.restarts >= 1, ErrorKind::usage, "restarts must be at least 1");
  require(config.max_parents >= 0, ErrorKind::usage, "max_parents must be non-negative");
  Rng rng(config.seed);
  HillClimbResult best{Dag(model.names()), 0.0, {}};
  bool have_best = false;
  for (int restart = 0; restart < config.restarts; ++restart) {
    const Dag start = restart == 0 ? Dag(model.names())
                                   : random_start(model.names(), config.max_parents, rng);
    ClimbOutcome outcome = climb_from(start, model, sprior, config);
    if (!have_best || outcome.score > best.log_score) {
      have_best = true;
      best = HillClimbResult{std::move(outcome.dag), outcome.score, std::move(outcome.trace)};
    }
  }
  return best;
}

HillClimbResult hill_climb(const DiscreteDataset& data, const DirichletJointPrior& prior,
                           const StructurePrior& sprior, const SearchConfig& config) {
  return hill_climb(DiscreteScoreModel(data, prior), sprior, config);
}

HillClimbResult hill_climb(const GaussianDataset& data, const NormalWishartPrior& prior,
                           const StructurePrior& sprior, const SearchConfig& config) {
  return hill_climb(GaussianScoreModel(data, prior), sprior, config);
}

}  // namespace bnscore
