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

#include <vector>

#include "bnscore/dag.hpp"
#include "bnscore/discrete_score.hpp"
#include "bnscore/gaussian_score.hpp"
#include "bnscore/linalg.hpp"
#include "bnscore/transforms.hpp"

namespace bnscore {

// Assessed discrete network from which scoring hyperparameters are
// derived.  cpts[i] holds q_i rows of r_i probabilities, rows mixed-radix
// over the node's sorted parents (most significant first).
class DiscretePriorNetwork {
 public:
  DiscretePriorNetwork(Dag dag, DiscreteScheme scheme,
                       std::vector<std::vector<double>> cpts);

  const Dag& dag() const { return dag_; }
  const DiscreteScheme& scheme() const { return scheme_; }
  const std::vector<std::vector<double>>& cpts() const { return cpts_; }

 private:
  Dag dag_;
  DiscreteScheme scheme_;
  std::vector<std::vector<double>> cpts_;
};

// Assessed linear-regression network: per node an intercept, one
// coefficient per (sorted) parent, and a positive conditional variance.
class GaussianPriorNetwork {
 public:
  GaussianPriorNetwork(Dag dag, std::vector<double> intercepts,
                       std::vector<std::vector<double>> coefficients,
                       std::vector<double> variances);

  const Dag& dag() const { return dag_; }
  const std::vector<double>& intercepts() const { return intercepts_; }
  const std::vector<std::vector<double>>& coefficients() const { return coefficients_; }
  const std::vector<double>& variances() const { return variances_; }
  int size() const { return dag_.size(); }

 private:
  Dag dag_;
  std::vector<double> intercepts_;
  std::vector<std::vector<double>> coefficients_;
  std::vector<double> variances_;
};

// Joint table by full enumeration of the network's factorization.
DirichletJointPrior discrete_prior_from_network(const DiscretePriorNetwork& net, double alpha);

// Mean and covariance implied by the network (exact forward recursion).
void gaussian_network_moments(const GaussianPriorNetwork& net, std::vector<double>& mean,
                              Matrix& covariance);

// mu0 = E(X), T0 = a_mu (a_w - n - 1)/(a_mu + 1) Cov(X).  Requires
// a_w > n + 1 so the covariance of the induced multivariate t exists.
NormalWishartPrior gaussian_prior_from_network(const GaussianPriorNetwork& net, double a_mu,
                                               double a_w);

}  // namespace bnscore
