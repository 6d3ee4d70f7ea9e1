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

#include "bnscore/discrete_score.hpp"

#include <algorithm>
#include <cmath>

#include "bnscore/error.hpp"
#include "bnscore/rng.hpp"

namespace bnscore {

namespace {

std::vector<int> sorted_unique(std::vector<int> vars, int n, const char* what) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (int v : vars) {
    require(v >= 0 && v < n, ErrorKind::usage, std::string(what) + ": index out of range");
  }
  return vars;
}

void check_family(int node, const std::vector<int>& parents, int n) {
  require(node >= 0 && node < n, ErrorKind::usage, "node index out of range");
  require(std::find(parents.begin(), parents.end(), node) == parents.end(), ErrorKind::usage,
          "a node cannot be its own parent");
}

void check_aligned(const Dag& dag, const DiscreteDataset& data,
                   const DirichletJointPrior& prior) {
  require(dag.names() == data.names(), ErrorKind::usage,
          "dag and dataset disagree on variable names");
  require(data.scheme() == prior.scheme(), ErrorKind::usage,
          "dataset and prior disagree on cardinalities");
}

CountTable make_table(const DiscreteScheme& scheme, int node, std::vector<int> parents) {
  CountTable table;
  table.node = node;
  table.parents = std::move(parents);
  table.parent_states = scheme.subset_state_count(table.parents);
  table.child_cardinality = scheme.cardinality(node);
  table.joint.assign(table.parent_states * static_cast<std::size_t>(table.child_cardinality),
                     0.0);
  table.by_parent.assign(table.parent_states, 0.0);
  return table;
}

}  // namespace

DirichletJointPrior::DirichletJointPrior(double alpha, JointDiscreteParams joint)
    : alpha_(alpha), joint_(std::move(joint)) {
  require(alpha_ > 0.0, ErrorKind::domain, "effective sample size must be positive");
}

DiscreteDataset::DiscreteDataset(DiscreteScheme scheme, std::vector<std::string> names,
                                 std::vector<int> cells)
    : scheme_(std::move(scheme)), names_(std::move(names)), cells_(std::move(cells)) {
  const auto n = static_cast<std::size_t>(scheme_.size());
  require(names_.size() == n, ErrorKind::usage, "one name per variable required");
  require(cells_.size() % n == 0, ErrorKind::usage, "cell count must be a multiple of n");
  m_ = cells_.size() / n;
  for (std::size_t l = 0; l < m_; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      const int value = cells_[l * n + i];
      require(value >= 0 && value < scheme_.cardinality(static_cast<int>(i)), ErrorKind::usage,
              "cell out of range at row " + std::to_string(l + 1) + ", column " + names_[i]);
    }
  }
}

std::span<const int> DiscreteDataset::row(std::size_t index) const {
  const auto n = static_cast<std::size_t>(scheme_.size());
  return std::span(cells_).subspan(index * n, n);
}

DiscreteDataset DiscreteDataset::prefix(std::size_t count) const {
  require(count <= m_, ErrorKind::usage, "prefix longer than the dataset");
  const auto n = static_cast<std::size_t>(scheme_.size());
  return DiscreteDataset(scheme_, names_,
                         std::vector<int>(cells_.begin(),
                                          cells_.begin() + static_cast<std::ptrdiff_t>(count * n)));
}

CountTable counts(const DiscreteDataset& data, int node, std::vector<int> parents) {
  parents = sorted_unique(std::move(parents), data.scheme().size(), "counts");
  check_family(node, parents, data.scheme().size());
  CountTable table = make_table(data.scheme(), node, std::move(parents));
  for (std::size_t l = 0; l < data.case_count(); ++l) {
    const auto row = data.row(l);
    const std::size_t j = data.scheme().subset_index(table.parents, row);
    const int k = row[static_cast<std::size_t>(node)];
    table.joint[j * static_cast<std::size_t>(table.child_cardinality) +
                static_cast<std::size_t>(k)] += 1.0;
    table.by_parent[j] += 1.0;
  }
  return table;
}

CountTable alpha_family(const DirichletJointPrior& prior, int node, std::vector<int> parents) {
  const DiscreteScheme& scheme = prior.scheme();
  parents = sorted_unique(std::move(parents), scheme.size(), "alpha_family");
  check_family(node, parents, scheme.size());
  CountTable table = make_table(scheme, node, std::move(parents));

  std::vector<int> family = table.parents;
  family.insert(std::upper_bound(family.begin(), family.end(), node), node);
  const std::vector<double> marginal = prior.joint().marginal(family);

  // The family marginal is mixed-radix over the sorted family; re-split it
  // into (parent configuration, child value).
  std::vector<int> config(family.size());
  std::vector<int> full(static_cast<std::size_t>(scheme.size()), 0);
  for (std::size_t s = 0; s < marginal.size(); ++s) {
    std::size_t rest = s;
    for (std::size_t i = family.size(); i-- > 0;) {
      const auto r = static_cast<std::size_t>(scheme.cardinality(family[i]));
      config[i] = static_cast<int>(rest % r);
      rest /= r;
    }
    for (std::size_t i = 0; i < family.size(); ++i) {
      full[static_cast<std::size_t>(family[i])] = config[i];
    }
    const std::size_t j = scheme.subset_index(table.parents, full);
    const int k = full[static_cast<std::size_t>(table.node)];
    const double value = prior.alpha() * marginal[s];
    table.joint[j * static_cast<std::size_t>(table.child_cardinality) +
                static_cast<std::size_t>(k)] += value;
    table.by_parent[j] += value;
  }
  return table;
}

double log_marginal_subset_discrete(const DirichletJointPrior& prior,
                                    const DiscreteDataset& data, std::vector<int> subset) {
  require(data.scheme() == prior.scheme(), ErrorKind::usage,
          "dataset and prior disagree on cardinalities");
  subset = sorted_unique(std::move(subset), prior.scheme().size(), "subset");
  const double alpha = prior.alpha();
  const auto m = static_cast<double>(data.case_count());

  const std::vector<double> p = prior.joint().marginal(subset);
  std::vector<double> observed(p.size(), 0.0);
  for (std::size_t l = 0; l < data.case_count(); ++l) {
    observed[data.scheme().subset_index(subset, data.row(l))] += 1.0;
  }

  double result = std::lgamma(alpha) - std::lgamma(alpha + m);
  for (std::size_t y = 0; y < p.size(); ++y) {
    const double a = alpha * p[y];
    result += std::lgamma(a + observed[y]) - std::lgamma(a);
  }
  return result;
}

double log_family_score_bde(const DiscreteDataset& data, const DirichletJointPrior& prior,
                            int node, std::vector<int> parents) {
  require(data.scheme() == prior.scheme(), ErrorKind::usage,
          "dataset and prior disagree on cardinalities");
  const CountTable n = counts(data, node, parents);
  const CountTable a = alpha_family(prior, node, std::move(parents));
  double total = 0.0;
  for (std::size_t j = 0; j < n.parent_states; ++j) {
    total += std::lgamma(a.by_parent[j]) - std::lgamma(a.by_parent[j] + n.by_parent[j]);
    for (int k = 0; k < n.child_cardinality; ++k) {
      total += std::lgamma(a.at(j, k) + n.at(j, k)) - std::lgamma(a.at(j, k));
    }
  }
  return total;
}

double log_score_bde(const Dag& dag, const DiscreteDataset& data,
                     const DirichletJointPrior& prior) {
  check_aligned(dag, data, prior);
  double total = 0.0;
  for (int i = 0; i < dag.size(); ++i) {
    total += log_family_score_bde(data, prior, i, dag.parents(i));
  }
  return total;
}

double log_score_bde_ratio(const Dag& dag, const DiscreteDataset& data,
                           const DirichletJointPrior& prior) {
  check_aligned(dag, data, prior);
  double total = 0.0;
  for (int i = 0; i < dag.size(); ++i) {
    std::vector<int> family = dag.parents(i);
    family.push_back(i);
    total += log_marginal_subset_discrete(prior, data, std::move(family));
    total -= log_marginal_subset_discrete(prior, data, dag.parents(i));
  }
  return total;
}

double log_sequential_predictive(const Dag& dag, const DiscreteDataset& prefix,
                                 std::span<const int> next_case,
                                 const DirichletJointPrior& prior) {
  check_aligned(dag, prefix, prior);
  require(next_case.size() == static_cast<std::size_t>(dag.size()), ErrorKind::usage,
          "case width must match the variable count");
  double total = 0.0;
  for (int i = 0; i < dag.size(); ++i) {
    const CountTable n = counts(prefix, i, dag.parents(i));
    const CountTable a = alpha_family(prior, i, dag.parents(i));
    const std::size_t j = prefix.scheme().subset_index(n.parents, next_case);
    const int k = next_case[static_cast<std::size_t>(i)];
    total += std::log((a.at(j, k) + n.at(j, k)) / (a.by_parent[j] + n.by_parent[j]));
  }
  return total;
}

DirichletJointPrior posterior(const DirichletJointPrior& prior, const DiscreteDataset& data) {
  require(data.scheme() == prior.scheme(), ErrorKind::usage,
          "dataset and prior disagree on cardinalities");
  const double alpha_m = prior.alpha() + static_cast<double>(data.case_count());
  std::vector<double> table(prior.joint().table());
  for (double& p : table) p *= prior.alpha();
  for (std::size_t l = 0; l < data.case_count(); ++l) {
    table[prior.scheme().index_of(data.row(l))] += 1.0;
  }
  for (double& p : table) p /= alpha_m;
  return DirichletJointPrior(alpha_m, JointDiscreteParams(prior.scheme(), std::move(table)));
}

double log_dirichlet_joint_density(const DirichletJointPrior& prior,
                                   const JointDiscreteParams& point) {
  require(point.scheme() == prior.scheme(), ErrorKind::usage,
          "point and prior disagree on cardinalities");
  const double alpha = prior.alpha();
  double result = std::lgamma(alpha);
  for (std::size_t s = 0; s < point.table().size(); ++s) {
    const double a = alpha * prior.joint().table()[s];
    result -= std::lgamma(a);
    result += (a - 1.0) * std::log(point.table()[s]);
  }
  return result;
}

double log_prior_density_conditionals(const DirichletJointPrior& prior,
                                      const ConditionalDiscreteParams& c) {
  require(c.scheme() == prior.scheme(), ErrorKind::usage,
          "conditionals and prior disagree on cardinalities");
  const DiscreteScheme& scheme = prior.scheme();
  const int n = scheme.size();
  const auto marginals = order_prefix_marginals(prior.joint(), c.order());
  const double alpha = prior.alpha();

  double result = 0.0;
  for (int pos = 0; pos < n; ++pos) {
    const auto r = static_cast<std::size_t>(scheme.cardinality(c.variable_at(pos)));
    const auto& marginal = marginals[static_cast<std::size_t>(pos)];
    const std::size_t rows = marginal.size() / r;
    for (std::size_t row = 0; row < rows; ++row) {
      double row_alpha = 0.0;
      double log_density = 0.0;
      for (std::size_t k = 0; k < r; ++k) {
        const double a = alpha * marginal[row * r + k];
        row_alpha += a;
        log_density -= std::lgamma(a);
        log_density += (a - 1.0) * std::log(c.value(pos, row, static_cast<int>(k)));
      }
      result += std::lgamma(row_alpha) + log_density;
    }
  }
  return result;
}

double dirichlet_consistency_max_gap(const DirichletJointPrior& prior, int points,
                                     std::uint64_t seed) {
  require(points > 0, ErrorKind::usage, "point count must be positive");
  const DiscreteScheme& scheme = prior.scheme();
  const int n = scheme.size();
  Rng rng(seed);
  double worst = 0.0;
  for (int point = 0; point < points; ++point) {
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(order);

    std::vector<std::vector<double>> tables(static_cast<std::size_t>(n));
    for (int pos = 0; pos < n; ++pos) {
      const auto r =
          static_cast<std::size_t>(scheme.cardinality(order[static_cast<std::size_t>(pos)]));
      std::size_t rows = 1;
      for (int j = 0; j < pos; ++j) {
        rows *= static_cast<std::size_t>(scheme.cardinality(order[static_cast<std::size_t>(j)]));
      }
      std::vector<double> table(rows * r);
      for (std::size_t row = 0; row < rows; ++row) {
        double sum = 0.0;
        for (std::size_t k = 0; k < r; ++k) {
          table[row * r + k] = rng.uniform(0.1, 1.0);
          sum += table[row * r + k];
        }
        for (std::size_t k = 0; k < r; ++k) table[row * r + k] /= sum;
      }
      tables[static_cast<std::size_t>(pos)] = std::move(table);
    }
    const ConditionalDiscreteParams c(scheme, order, std::move(tables));
    const double factored = log_prior_density_conditionals(prior, c);
    const double via_joint =
        log_dirichlet_joint_density(prior, conditionals_to_joint(c)) + log_jacobian_discrete(c);
    worst = std::max(worst, std::abs(factored - via_joint));
  }
  return worst;
}

}  // namespace bnscore
