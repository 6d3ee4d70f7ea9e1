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

#include <cstddef>
#include <span>
#include <vector>

#include "bnscore/linalg.hpp"

namespace bnscore {

// Probabilities and factorization pivots below this are treated as zero.
inline constexpr double kPositivityTol = 1e-12;
// Distributions must sum to one within this.
inline constexpr double kSumTol = 1e-12;

// Joint-table cap; override with the BNSCORE_MAX_STATES environment
// variable.
std::size_t max_joint_states();

// Cardinalities r_i >= 2 per variable, plus mixed-radix indexing of full
// configurations.  Variable 0 is the most significant digit; the last
// variable varies fastest.  Subset indexing uses the same convention over
// the subset's sorted variable indices, which is also how count tables and
// CPT rows are laid out.
class DiscreteScheme {
 public:
  explicit DiscreteScheme(std::vector<int> cardinalities);

  int size() const { return static_cast<int>(cards_.size()); }
  int cardinality(int var) const { return cards_[static_cast<std::size_t>(var)]; }
  const std::vector<int>& cardinalities() const { return cards_; }
  std::size_t state_count() const { return state_count_; }

  std::size_t index_of(std::span<const int> config) const;
  void decode(std::size_t index, std::span<int> config) const;

  std::size_t subset_state_count(std::span<const int> sorted_vars) const;
  std::size_t subset_index(std::span<const int> sorted_vars, std::span<const int> config) const;

  friend bool operator==(const DiscreteScheme& a, const DiscreteScheme& b) {
    return a.cards_ == b.cards_;
  }

 private:
  std::vector<int> cards_;
  std::vector<std::size_t> strides_;
  std::size_t state_count_ = 1;
};

// Strictly positive joint table over all full configurations, summing to
// one.  The order-free parameterization of a complete structure.
class JointDiscreteParams {
 public:
  JointDiscreteParams(DiscreteScheme scheme, std::vector<double> table);

  const DiscreteScheme& scheme() const { return scheme_; }
  const std::vector<double>& table() const { return table_; }

  // Marginal over the given sorted variable subset, mixed-radix indexed.
  // An empty subset yields the single entry {1}.
  std::vector<double> marginal(std::span<const int> sorted_vars) const;

 private:
  DiscreteScheme scheme_;
  std::vector<double> table_;
};

// Conditional tables for one complete structure: position i of `order`
// holds p(x | predecessors) with rows indexed mixed-radix over the
// predecessor positions (order[0] most significant).
class ConditionalDiscreteParams {
 public:
  ConditionalDiscreteParams(DiscreteScheme scheme, std::vector<int> order,
                            std::vector<std::vector<double>> tables);

  const DiscreteScheme& scheme() const { return scheme_; }
  const std::vector<int>& order() const { return order_; }
  int variable_at(int position) const { return order_[static_cast<std::size_t>(position)]; }

  std::size_t predecessor_states(int position) const;
  // p(value | predecessor configuration) at the given order position.
  double value(int position, std::size_t predecessor_index, int value_index) const;
  const std::vector<double>& table(int position) const {
    return tables_[static_cast<std::size_t>(position)];
  }

 private:
  DiscreteScheme scheme_;
  std::vector<int> order_;
  std::vector<std::vector<double>> tables_;
};

// Linear-regression parameters of a complete Gaussian structure in a given
// variable order: per position i an intercept, one coefficient per
// predecessor position j < i, and a conditional variance.
struct RegressionParams {
  std::vector<int> order;
  std::vector<double> intercepts;
  std::vector<std::vector<double>> coefficients;  // coefficients[i][j], j < i
  std::vector<double> variances;
};

// Order-free Gaussian parameterization: mean vector and symmetric positive
// definite precision matrix, indexed by variable.
struct JointGaussianParams {
  std::vector<double> mean;
  Matrix precision;
};

JointDiscreteParams conditionals_to_joint(const ConditionalDiscreteParams& c);

ConditionalDiscreteParams joint_to_conditionals(const JointDiscreteParams& joint,
                                                std::vector<int> order);

// log |d(joint)/d(conditionals)| for the discrete mapping above.
double log_jacobian_discrete(const ConditionalDiscreteParams& c);

// Mean recursion plus the Shachter-Kenley precision recursion, permuted
// back to variable indexing.
JointGaussianParams regression_to_joint(const RegressionParams& r);

// Inverse map for a given order, via root-free symmetric elimination of
// the precision matrix from the last order position backwards.
RegressionParams joint_to_regression(const JointGaussianParams& g, std::vector<int> order);

// log |dW/d(v,B)| = sum_i -(i+1) log v_i with i the 1-based order
// position.  The companion mean map has unit Jacobian.
double log_jacobian_gaussian(std::span<const double> variances);

// Prefix marginals of a joint table under an order: element i is the
// marginal over (order[0..i]) indexed mixed-radix with order[0] most
// significant.  Shared by the conditional transform and the prior-density
// factorizations.
std::vector<std::vector<double>> order_prefix_marginals(const JointDiscreteParams& joint,
                                                        std::span<const int> order);

}  // namespace bnscore
