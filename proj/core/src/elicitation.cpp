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

#include "bnscore/elicitation.hpp"

#include <cmath>
#include <string>

#include "bnscore/error.hpp"

namespace bnscore {

namespace {

// CPT rows are assessed numbers, so allow a slightly looser sum tolerance
// than internally computed tables.
constexpr double kCptSumTol = 1e-10;

}  // namespace

DiscretePriorNetwork::DiscretePriorNetwork(Dag dag, DiscreteScheme scheme,
                                           std::vector<std::vector<double>> cpts)
    : dag_(std::move(dag)), scheme_(std::move(scheme)), cpts_(std::move(cpts)) {
  const int n = dag_.size();
  require(scheme_.size() == n, ErrorKind::usage, "scheme and dag disagree on dimension");
  require(cpts_.size() == static_cast<std::size_t>(n), ErrorKind::usage,
          "one CPT per node required");
  for (int i = 0; i < n; ++i) {
    const auto r = static_cast<std::size_t>(scheme_.cardinality(i));
    const std::size_t rows = scheme_.subset_state_count(dag_.parents(i));
    const auto& cpt = cpts_[static_cast<std::size_t>(i)];
    require(cpt.size() == rows * r, ErrorKind::usage,
            "CPT for node " + dag_.names()[static_cast<std::size_t>(i)] +
                " has the wrong size");
    for (std::size_t row = 0; row < rows; ++row) {
      double sum = 0.0;
      for (std::size_t k = 0; k < r; ++k) {
        const double p = cpt[row * r + k];
        require(p > 0.0, ErrorKind::positivity,
                "CPT entries must be strictly positive (node " +
                    dag_.names()[static_cast<std::size_t>(i)] + ")");
        sum += p;
      }
      require(std::abs(sum - 1.0) <= kCptSumTol, ErrorKind::usage,
              "CPT row does not sum to 1 (node " +
                  dag_.names()[static_cast<std::size_t>(i)] + ")");
    }
  }
}

GaussianPriorNetwork::GaussianPriorNetwork(Dag dag, std::vector<double> intercepts,
                                           std::vector<std::vector<double>> coefficients,
                                           std::vector<double> variances)
    : dag_(std::move(dag)),
      intercepts_(std::move(intercepts)),
      coefficients_(std::move(coefficients)),
      variances_(std::move(variances)) {
  const auto n = static_cast<std::size_t>(dag_.size());
  require(intercepts_.size() == n && coefficients_.size() == n && variances_.size() == n,
          ErrorKind::usage, "per-node parameter lists must match the node count");
  for (std::size_t i = 0; i < n; ++i) {
    require(std::isfinite(intercepts_[i]), ErrorKind::domain, "intercepts must be finite");
    require(variances_[i] > 0.0, ErrorKind::domain, "variances must be positive");
    require(coefficients_[i].size() == dag_.parents(static_cast<int>(i)).size(),
            ErrorKind::usage, "one coefficient per parent required");
    for (double b : coefficients_[i]) {
      require(std::isfinite(b), ErrorKind::domain, "coefficients must be finite");
    }
  }
}

DirichletJointPrior discrete_prior_from_network(const DiscretePriorNetwork& net, double alpha) {
  require(alpha > 0.0, ErrorKind::domain, "effective sample size must be positive");
  const DiscreteScheme& scheme = net.scheme();
  const int n = scheme.size();
  std::vector<double> table(scheme.state_count());
  std::vector<int> config(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < table.size(); ++s) {
    scheme.decode(s, config);
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(scheme.cardinality(i));
      const std::size_t row = scheme.subset_index(net.dag().parents(i), config);
      p *= net.cpts()[static_cast<std::size_t>(i)]
                     [row * r + static_cast<std::size_t>(config[static_cast<std::size_t>(i)])];
    }
    table[s] = p;
  }
  const double total = kahan_sum(table);
  for (double& p : table) p /= total;
  return DirichletJointPrior(alpha, JointDiscreteParams(scheme, std::move(table)));
}

void gaussian_network_moments(const GaussianPriorNetwork& net, std::vector<double>& mean,
                              Matrix& covariance) {
  const auto n = static_cast<std::size_t>(net.size());
  mean.assign(n, 0.0);
  covariance = Matrix(n, n, 0.0);
  for (int node : topological_order(net.dag())) {
    const auto i = static_cast<std::size_t>(node);
    const auto& parents = net.dag().parents(node);
    const auto& b = net.coefficients()[i];

    double mu = net.intercepts()[i];
    for (std::size_t p = 0; p < parents.size(); ++p) {
      mu += b[p] * mean[static_cast<std::size_t>(parents[p])];
    }
    mean[i] = mu;

    // Cov(x_i, x_k) = sum_j b_j Cov(x_j, x_k) for previously processed k;
    // Var(x_i) = v_i + b' Cov_parents b.
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      double cov = 0.0;
      for (std::size_t p = 0; p < parents.size(); ++p) {
        cov += b[p] * covariance(static_cast<std::size_t>(parents[p]), k);
      }
      covariance(i, k) = cov;
      covariance(k, i) = cov;
    }
    double var = net.variances()[i];
    for (std::size_t p = 0; p < parents.size(); ++p) {
      for (std::size_t q = 0; q < parents.size(); ++q) {
        var += b[p] * b[q] *
               covariance(static_cast<std::size_t>(parents[p]),
                          static_cast<std::size_t>(parents[q]));
      }
    }
    covariance(i, i) = var;
  }
}

NormalWishartPrior gaussian_prior_from_network(const GaussianPriorNetwork& net, double a_mu,
                                               double a_w) {
  const int n = net.size();
  require(a_mu > 0.0, ErrorKind::domain, "a_mu must be positive");
  require(a_w > static_cast<double>(n) + 1.0, ErrorKind::domain,
          "a_w must exceed n + 1 for the prior network moments to exist");
  std::vector<double> mean;
  Matrix covariance;
  gaussian_network_moments(net, mean, covariance);
  const double scale = a_mu * (a_w - static_cast<double>(n) - 1.0) / (a_mu + 1.0);
  Matrix t0(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < t0.rows(); ++i) {
    for (std::size_t j = 0; j < t0.cols(); ++j) t0(i, j) = scale * covariance(i, j);
  }
  return NormalWishartPrior(std::move(mean), a_mu, std::move(t0), a_w);
}

}  // namespace bnscore
