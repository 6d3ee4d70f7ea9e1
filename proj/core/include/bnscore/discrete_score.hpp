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
#include <span>
#include <string>
#include <vector>

#include "bnscore/dag.hpp"
#include "bnscore/transforms.hpp"

namespace bnscore {

// Dirichlet prior over the order-free joint parameters of a complete
// discrete structure: an effective sample size plus a strictly positive
// joint table.  Family hyperparameters are marginalized views of
// alpha * joint.
class DirichletJointPrior {
 public:
  DirichletJointPrior(double alpha, JointDiscreteParams joint);

  double alpha() const { return alpha_; }
  const JointDiscreteParams& joint() const { return joint_; }
  const DiscreteScheme& scheme() const { return joint_.scheme(); }
  int variable_count() const { return joint_.scheme().size(); }

 private:
  double alpha_;
  JointDiscreteParams joint_;
};

// Complete discrete sample: m rows of category codes, one column per
// variable, codes in [0, r_i).
class DiscreteDataset {
 public:
  DiscreteDataset(DiscreteScheme scheme, std::vector<std::string> names,
                  std::vector<int> cells);

  const DiscreteScheme& scheme() const { return scheme_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t case_count() const { return m_; }
  std::span<const int> row(std::size_t index) const;

  // First `count` rows.
  DiscreteDataset prefix(std::size_t count) const;

 private:
  DiscreteScheme scheme_;
  std::vector<std::string> names_;
  std::size_t m_;
  std::vector<int> cells_;
};

// Per-family table: entries indexed by (parent configuration j, child
// value k), with parent configurations mixed-radix over the sorted parent
// indices, most significant first.  Holds either data counts or the
// matching Dirichlet hyperparameters.
struct CountTable {
  int node = 0;
  std::vector<int> parents;  // sorted
  std::size_t parent_states = 1;
  int child_cardinality = 0;

  std::vector<double> joint;   // parent_states x child_cardinality, row-major
  std::vector<double> by_parent;  // row sums

  double at(std::size_t j, int k) const {
    return joint[j * static_cast<std::size_t>(child_cardinality) + static_cast<std::size_t>(k)];
  }
};

CountTable counts(const DiscreteDataset& data, int node, std::vector<int> parents);

// alpha_ijk = alpha * p(x_i = k, pa = j), by exact marginalization of the
// prior's joint table.
CountTable alpha_family(const DirichletJointPrior& prior, int node, std::vector<int> parents);

// Log marginal likelihood of the sample restricted to the subset:
// log Gamma(a)/Gamma(a+m) + sum_y [log Gamma(a p(y) + N_y) - log Gamma(a p(y))].
// The empty subset gives exactly zero.
double log_marginal_subset_discrete(const DirichletJointPrior& prior,
                                    const DiscreteDataset& data, std::vector<int> subset);

// Family-form score: per (node, parent configuration) Gamma ratios over
// counts and hyperparameters.
double log_score_bde(const Dag& dag, const DiscreteDataset& data,
                     const DirichletJointPrior& prior);

// Contribution of a single family to the family-form score.
double log_family_score_bde(const DiscreteDataset& data, const DirichletJointPrior& prior,
                            int node, std::vector<int> parents);

// Subset-ratio form: sum_i [subset(Pa_i + {X_i}) - subset(Pa_i)].
// Agrees with the family form up to rounding.
double log_score_bde_ratio(const Dag& dag, const DiscreteDataset& data,
                           const DirichletJointPrior& prior);

// log p(case | prefix, dag): per node, (alpha_ijk + N_ijk)/(alpha_ij + N_ij)
// with counts taken from the prefix.  Summing over all m cases recovers
// the batch score.
double log_sequential_predictive(const Dag& dag, const DiscreteDataset& prefix,
                                 std::span<const int> next_case,
                                 const DirichletJointPrior& prior);

// Posterior after a complete sample: counts added to alpha * joint.
DirichletJointPrior posterior(const DirichletJointPrior& prior, const DiscreteDataset& data);

// Normalized log density of the joint Dirichlet at a joint-table point.
double log_dirichlet_joint_density(const DirichletJointPrior& prior,
                                   const JointDiscreteParams& point);

// Fully factored log density of the conditional parameters: one Dirichlet
// per (order position, predecessor configuration), hyperparameters
// marginalized from alpha * joint.  Equals the joint density plus the
// discrete log-Jacobian at the transformed point.
double log_prior_density_conditionals(const DirichletJointPrior& prior,
                                      const ConditionalDiscreteParams& c);

// Max absolute gap between the two density routes over random conditional
// points and random orders; near zero for any Dirichlet joint prior.
double dirichlet_consistency_max_gap(const DirichletJointPrior& prior, int points,
                                     std::uint64_t seed);

}  // namespace bnscore
