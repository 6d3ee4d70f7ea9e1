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

#include <string>
#include <variant>
#include <vector>

#include "bnscore/dag.hpp"
#include "bnscore/discrete_score.hpp"
#include "bnscore/elicitation.hpp"
#include "bnscore/gaussian_score.hpp"

namespace bnscore {

// DAG form: {"names": [...], "arcs": [["A","B"], ...]} with arcs as
// [from, to] name pairs, sorted by index pair on output.
std::string dag_to_json(const Dag& dag);
Dag dag_from_json(const std::string& text);

// Scoring priors are tagged with "model": "discrete" carries
// {names, cardinalities, alpha, joint} with the joint table in canonical
// configuration order (variable 0 most significant); "gaussian" carries
// {names, mu0, a_mu, a_w, t0}.
struct NamedDiscretePrior {
  std::vector<std::string> names;
  DirichletJointPrior prior;
};
struct NamedGaussianPrior {
  std::vector<std::string> names;
  NormalWishartPrior prior;
};
using NamedScoringPrior = std::variant<NamedDiscretePrior, NamedGaussianPrior>;

std::string prior_to_json(const NamedDiscretePrior& prior);
std::string prior_to_json(const NamedGaussianPrior& prior);
NamedScoringPrior prior_from_json(const std::string& text);

// Prior networks: discrete {"names","arcs","cardinalities","cpts"} with
// CPT rows in mixed-radix parent order; gaussian {"names","arcs",
// "intercepts","coefficients","variances"} with coefficients keyed by
// parent name.  The loader dispatches on which fields are present.
using PriorNetwork = std::variant<DiscretePriorNetwork, GaussianPriorNetwork>;
PriorNetwork network_from_json(const std::string& text);

}  // namespace bnscore
