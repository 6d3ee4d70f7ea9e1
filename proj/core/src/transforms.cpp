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

#include "bnscore/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "bnscore/error.hpp"

namespace bnscore {

namespace {

void check_order(const std::vector<int>& order, int n) {
  require(static_cast<int>(order.size()) == n, ErrorKind::usage,
          "order must list every variable exactly once");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : order) {
    require(v >= 0 && v < n, ErrorKind::usage, "order index out of range");
    require(!seen[static_cast<std::size_t>(v)], ErrorKind::usage, "order repeats a variable");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

void check_distribution(std::span<const double> row, const char* what) {
  for (double p : row) {
    require(p > kPositivityTol, ErrorKind::positivity,
            std::string(what) + ": entries must be strictly positive");
  }
  const double sum = kahan_sum(row);
  require(std::abs(sum - 1.0) <= kSumTol, ErrorKind::usage,
          std::string(what) + ": entries must sum to 1 (got " + std::to_string(sum) + ")");
}

}  // namespace

std::size_t max_joint_states() {
  static constexpr std::size_t kDefault = std::size_t{1} << 20;
  const char* env = std::getenv("BNSCORE_MAX_STATES");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const unsigned long long parsed = std::strtoull(env, &end, 10);
  require(end != nullptr && *end == '\0' && parsed > 0, ErrorKind::usage,
          "BNSCORE_MAX_STATES must be a positive integer");
  return static_cast<std::size_t>(parsed);
}

DiscreteScheme::DiscreteScheme(std::vector<int> cardinalities)
    : cards_(std::move(cardinalities)) {
  require(!cards_.empty(), ErrorKind::usage, "scheme needs at least one variable");
  const std::size_t cap = max_joint_states();
  for (int r : cards_) {
    require(r >= 2, ErrorKind::usage, "cardinalities must be at least 2");
    require(state_count_ <= cap / static_cast<std::size_t>(r), ErrorKind::capacity,
            "joint state space exceeds the cap of " + std::to_string(cap) +
                " states (override with BNSCORE_MAX_STATES)");
    state_count_ *= static_cast<std::size_t>(r);
  }
  strides_.assign(cards_.size(), 1);
  for (std::size_t i = cards_.size() - 1; i-- > 0;) {
    strides_[i] = strides_[i + 1] * static_cast<std::size_t>(cards_[i + 1]);
  }
}

std::size_t DiscreteScheme::index_of(std::span<const int> config) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < cards_.size(); ++i) {
    index += static_cast<std::size_t>(config[i]) * strides_[i];
  }
  return index;
}

void DiscreteScheme::decode(std::size_t index, std::span<int> config) const {
  for (std::size_t i = 0; i < cards_.size(); ++i) {
    config[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
}

std::size_t DiscreteScheme::subset_state_count(std::span<const int> sorted_vars) const {
  std::size_t count = 1;
  for (int v : sorted_vars) count *= static_cast<std::size_t>(cardinality(v));
  return count;
}

std::size_t DiscreteScheme::subset_index(std::span<const int> sorted_vars,
                                         std::span<const int> config) const {
  std::size_t index = 0;
  for (int v : sorted_vars) {
    index = index * static_cast<std::size_t>(cardinality(v)) +
            static_cast<std::size_t>(config[static_cast<std::size_t>(v)]);
  }
  return index;
}

JointDiscreteParams::JointDiscreteParams(DiscreteScheme scheme, std::vector<double> table)
    : scheme_(std::move(scheme)), table_(std::move(table)) {
  require(table_.size() == scheme_.state_count(), ErrorKind::usage,
          "joint table size must equal the state count");
  check_distribution(table_, "joint table");
}

std::vector<double> JointDiscreteParams::marginal(std::span<const int> sorted_vars) const {
  std::vector<double> out(scheme_.subset_state_count(sorted_vars), 0.0);
  std::vector<int> config(static_cast<std::size_t>(scheme_.size()));
  for (std::size_t s = 0; s < table_.size(); ++s) {
    scheme_.decode(s, config);
    out[scheme_.subset_index(sorted_vars, config)] += table_[s];
  }
  return out;
}

ConditionalDiscreteParams::ConditionalDiscreteParams(DiscreteScheme scheme,
                                                     std::vector<int> order,
                                                     std::vector<std::vector<double>> tables)
    : scheme_(std::move(scheme)), order_(std::move(order)), tables_(std::move(tables)) {
  check_order(order_, scheme_.size());
  require(tables_.size() == order_.size(), ErrorKind::usage,
          "one conditional table per order position required");
  for (int pos = 0; pos < scheme_.size(); ++pos) {
    const std::size_t rows = predecessor_states(pos);
    const auto r = static_cast<std::size_t>(scheme_.cardinality(variable_at(pos)));
    const auto& table = tables_[static_cast<std::size_t>(pos)];
    require(table.size() == rows * r, ErrorKind::usage,
            "conditional table has the wrong size at position " + std::to_string(pos));
    for (std::size_t row = 0; row < rows; ++row) {
      check_distribution(std::span(table).subspan(row * r, r), "conditional row");
    }
  }
}

std::size_t ConditionalDiscreteParams::predecessor_states(int position) const {
  std::size_t count = 1;
  for (int j = 0; j < position; ++j) {
    count *= static_cast<std::size_t>(scheme_.cardinality(variable_at(j)));
  }
  return count;
}

double ConditionalDiscreteParams::value(int position, std::size_t predecessor_index,
                                        int value_index) const {
  const auto r = static_cast<std::size_t>(scheme_.cardinality(variable_at(position)));
  return tables_[static_cast<std::size_t>(position)]
                [predecessor_index * r + static_cast<std::size_t>(value_index)];
}

JointDiscreteParams conditionals_to_joint(const ConditionalDiscreteParams& c) {
  const DiscreteScheme& scheme = c.scheme();
  const int n = scheme.size();
  std::vector<double> table(scheme.state_count());
  std::vector<int> config(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < table.size(); ++s) {
    scheme.decode(s, config);
    double p = 1.0;
    std::size_t predecessor_index = 0;
    for (int pos = 0; pos < n; ++pos) {
      const int var = c.variable_at(pos);
      const int value = config[static_cast<std::size_t>(var)];
      p *= c.value(pos, predecessor_index, value);
      predecessor_index = predecessor_index * static_cast<std::size_t>(scheme.cardinality(var)) +
                          static_cast<std::size_t>(value);
    }
    table[s] = p;
  }
  // The product form sums to one up to accumulated row drift; renormalize
  // so the result meets the joint-table invariant.
  const double total = kahan_sum(table);
  for (double& p : table) p /= total;
  return JointDiscreteParams(scheme, std::move(table));
}

std::vector<std::vector<double>> order_prefix_marginals(const JointDiscreteParams& joint,
                                                        std::span<const int> order) {
  const DiscreteScheme& scheme = joint.scheme();
  const int n = scheme.size();
  std::vector<std::vector<double>> marginals(static_cast<std::size_t>(n));
  std::vector<std::size_t> sizes(static_cast<std::size_t>(n));
  std::size_t size = 1;
  for (int pos = 0; pos < n; ++pos) {
    size *= static_cast<std::size_t>(scheme.cardinality(order[static_cast<std::size_t>(pos)]));
    sizes[static_cast<std::size_t>(pos)] = size;
    marginals[static_cast<std::size_t>(pos)].assign(size, 0.0);
  }
  std::vector<int> config(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < joint.table().size(); ++s) {
    scheme.decode(s, config);
    std::size_t index = 0;
    for (int pos = 0; pos < n; ++pos) {
      const int var = order[static_cast<std::size_t>(pos)];
      index = index * static_cast<std::size_t>(scheme.cardinality(var)) +
              static_cast<std::size_t>(config[static_cast<std::size_t>(var)]);
      marginals[static_cast<std::size_t>(pos)][index] += joint.table()[s];
    }
  }
  return marginals;
}

ConditionalDiscreteParams joint_to_conditionals(const JointDiscreteParams& joint,
                                                std::vector<int> order) {
  const DiscreteScheme& scheme = joint.scheme();
  const int n = scheme.size();
  check_order(order, n);
  const auto marginals = order_prefix_marginals(joint, order);
  std::vector<std::vector<double>> tables(static_cast<std::size_t>(n));
  for (int pos = 0; pos < n; ++pos) {
    const auto& numer = marginals[static_cast<std::size_t>(pos)];
    const auto r =
        static_cast<std::size_t>(scheme.cardinality(order[static_cast<std::size_t>(pos)]));
    const std::size_t rows = numer.size() / r;
    std::vector<double> table(numer.size());
    for (std::size_t row = 0; row < rows; ++row) {
      // Dividing by the row's own sum keeps each conditional row exactly
      // normalized; the row sum is the predecessor marginal.
      double denom = 0.0;
      for (std::size_t k = 0; k < r; ++k) denom += numer[row * r + k];
      require(denom > kPositivityTol, ErrorKind::positivity,
              "joint_to_conditionals: zero marginal encountered");
      for (std::size_t k = 0; k < r; ++k) table[row * r + k] = numer[row * r + k] / denom;
    }
    tables[static_cast<std::size_t>(pos)] = std::move(table);
  }
  return ConditionalDiscreteParams(scheme, std::move(order), std::move(tables));
}

double log_jacobian_discrete(const ConditionalDiscreteParams& c) {
  const DiscreteScheme& scheme = c.scheme();
  const int n = scheme.size();
  double total = 0.0;
  for (int pos = 0; pos < n - 1; ++pos) {
    double successor_states = 1.0;
    for (int j = pos + 1; j < n; ++j) {
      successor_states *= static_cast<double>(scheme.cardinality(c.variable_at(j)));
    }
    const double exponent = successor_states - 1.0;
    const auto r = static_cast<std::size_t>(scheme.cardinality(c.variable_at(pos)));
    const std::size_t rows = c.predecessor_states(pos);
    for (std::size_t row = 0; row < rows; ++row) {
      for (std::size_t k = 0; k < r; ++k) {
        total += exponent * std::log(c.value(pos, row, static_cast<int>(k)));
      }
    }
  }
  return total;
}

JointGaussianParams regression_to_joint(const RegressionParams& r) {
  const int n = static_cast<int>(r.order.size());
  check_order(r.order, n);
  require(r.intercepts.size() == r.order.size() && r.variances.size() == r.order.size() &&
              r.coefficients.size() == r.order.size(),
          ErrorKind::usage, "regression parameter sizes disagree");
  for (int i = 0; i < n; ++i) {
    require(r.coefficients[static_cast<std::size_t>(i)].size() == static_cast<std::size_t>(i),
            ErrorKind::usage, "coefficient vector at position " + std::to_string(i) +
                                  " must have one entry per predecessor");
    require(r.variances[static_cast<std::size_t>(i)] > 0.0, ErrorKind::domain,
            "conditional variances must be positive");
  }

  // Mean recursion in order coordinates.
  std::vector<double> mu_ord(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double mu = r.intercepts[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      mu += r.coefficients[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
            mu_ord[static_cast<std::size_t>(j)];
    }
    mu_ord[static_cast<std::size_t>(i)] = mu;
  }

  // Precision recursion: grow the upper-left block one position at a time.
  Matrix w_ord(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
  w_ord(0, 0) = 1.0 / r.variances[0];
  for (int i = 1; i < n; ++i) {
    const double v = r.variances[static_cast<std::size_t>(i)];
    const auto& b = r.coefficients[static_cast<std::size_t>(i)];
    for (int a = 0; a < i; ++a) {
      for (int c = 0; c < i; ++c) {
        w_ord(static_cast<std::size_t>(a), static_cast<std::size_t>(c)) +=
            b[static_cast<std::size_t>(a)] * b[static_cast<std::size_t>(c)] / v;
      }
      w_ord(static_cast<std::size_t>(a), static_cast<std::size_t>(i)) =
          -b[static_cast<std::size_t>(a)] / v;
      w_ord(static_cast<std::size_t>(i), static_cast<std::size_t>(a)) =
          -b[static_cast<std::size_t>(a)] / v;
    }
    w_ord(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1.0 / v;
  }

  // Permute back to variable indexing.
  JointGaussianParams g;
  g.mean.assign(static_cast<std::size_t>(n), 0.0);
  g.precision = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    g.mean[static_cast<std::size_t>(r.order[static_cast<std::size_t>(i)])] =
        mu_ord[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      g.precision(static_cast<std::size_t>(r.order[static_cast<std::size_t>(i)]),
                  static_cast<std::size_t>(r.order[static_cast<std::size_t>(j)])) =
          w_ord(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return g;
}

RegressionParams joint_to_regression(const JointGaussianParams& g, std::vector<int> order) {
  const int n = static_cast<int>(g.mean.size());
  require(g.precision.rows() == g.mean.size() && g.precision.cols() == g.mean.size(),
          ErrorKind::usage, "mean and precision dimensions disagree");
  check_order(order, n);

  // Work in order coordinates.
  Matrix w(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  std::vector<double> mu(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    mu[static_cast<std::size_t>(i)] =
        g.mean[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
    for (int j = 0; j < n; ++j) {
      w(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          g.precision(static_cast<std::size_t>(order[static_cast<std::size_t>(i)]),
                      static_cast<std::size_t>(order[static_cast<std::size_t>(j)]));
    }
  }

  RegressionParams r;
  r.order = std::move(order);
  r.intercepts.assign(static_cast<std::size_t>(n), 0.0);
  r.coefficients.resize(static_cast<std::size_t>(n));
  r.variances.assign(static_cast<std::size_t>(n), 0.0);

  // Eliminate from the last order position backwards; each pivot is the
  // reciprocal conditional variance.
  for (int i = n - 1; i >= 0; --i) {
    const double pivot = w(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
    require(pivot > kPositivityTol, ErrorKind::numeric,
            "joint_to_regression: precision matrix is not positive definite");
    const double v = 1.0 / pivot;
    r.variances[static_cast<std::size_t>(i)] = v;
    std::vector<double> b(static_cast<std::size_t>(i));
    for (int j = 0; j < i; ++j) {
      b[static_cast<std::size_t>(j)] =
          -w(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) * v;
    }
    for (int a = 0; a < i; ++a) {
      for (int c = 0; c < i; ++c) {
        w(static_cast<std::size_t>(a), static_cast<std::size_t>(c)) -=
            b[static_cast<std::size_t>(a)] * b[static_cast<std::size_t>(c)] * pivot;
      }
    }
    r.coefficients[static_cast<std::size_t>(i)] = std::move(b);
  }
  for (int i = 0; i < n; ++i) {
    double m = mu[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      m -= r.coefficients[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
           mu[static_cast<std::size_t>(j)];
    }
    r.intercepts[static_cast<std::size_t>(i)] = m;
  }
  return r;
}

double log_jacobian_gaussian(std::span<const double> variances) {
  double total = 0.0;
  for (std::size_t i = 0; i < variances.size(); ++i) {
    require(variances[i] > 0.0, ErrorKind::domain, "variances must be positive");
    total -= static_cast<double>(i + 2) * std::log(variances[i]);
  }
  return total;
}

}  // namespace bnscore
