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

#include <doctest.h>

#include <cmath>

#include "bnscore/discrete_score.hpp"
#include "bnscore/error.hpp"
#include "bnscore/search.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace bnscore;
using namespace bnscore::testing;

namespace {

DirichletJointPrior uniform_prior(const DiscreteScheme& scheme, double alpha) {
  std::vector<double> table(scheme.state_count(),
                            1.0 / static_cast<double>(scheme.state_count()));
  return DirichletJointPrior(alpha, JointDiscreteParams(scheme, std::move(table)));
}

DiscreteDataset empty_dataset(const DiscreteScheme& scheme) {
  return DiscreteDataset(scheme, variable_names(scheme.size()), {});
}

}  // namespace

TEST_SUITE("discrete_score") {

TEST_CASE("counts") {
  const DiscreteScheme scheme({2, 2});
  const auto names = variable_names(2);

  const CountTable zero = counts(empty_dataset(scheme), 0, {});
  CHECK(zero.joint == std::vector<double>{0.0, 0.0});

  const DiscreteDataset one_row(scheme, names, {0, 1});
  const CountTable single = counts(one_row, 0, {});
  CHECK(single.joint == std::vector<double>{1.0, 0.0});

  Rng rng(3);
  const DiscreteScheme scheme3({2, 3, 2});
  const auto data = random_discrete_dataset(scheme3, variable_names(3), 40, rng);
  const CountTable table = counts(data, 1, {0, 2});
  double total = 0.0;
  for (double c : table.joint) total += c;
  CHECK(total == doctest::Approx(40.0));
  CHECK_THROWS_AS(counts(data, 1, {1}), Error);
}

TEST_CASE("alpha_family from the uniform joint") {
  const DiscreteScheme scheme({2, 2});
  const auto prior = uniform_prior(scheme, 4.0);

  const CountTable root = alpha_family(prior, 0, {});
  CHECK(root.joint[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(root.joint[1] == doctest::Approx(2.0).epsilon(1e-12));

  const CountTable child = alpha_family(prior, 1, {0});
  for (double a : child.joint) CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(child.by_parent[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("alpha_family marginalization matches brute enumeration") {
  Rng rng(5);
  const DiscreteScheme scheme({2, 3, 2});
  const auto prior = random_dirichlet_prior(scheme, rng);
  const CountTable table = alpha_family(prior, 2, {0});

  // brute force: sum alpha * p over all configurations
  std::vector<double> expected(table.joint.size(), 0.0);
  std::vector<int> config(3);
  for (std::size_t s = 0; s < scheme.state_count(); ++s) {
    scheme.decode(s, config);
    const std::size_t j = static_cast<std::size_t>(config[0]);
    const std::size_t k = static_cast<std::size_t>(config[2]);
    expected[j * 2 + k] += prior.alpha() * prior.joint().table()[s];
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(table.joint[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
  double total = 0.0;
  for (double a : table.joint) total += a;
  CHECK(total == doctest::Approx(prior.alpha()).epsilon(1e-12));
}

TEST_CASE("subset marginal basics") {
  const DiscreteScheme scheme({2});
  const auto prior = uniform_prior(scheme, 2.0);

  CHECK(log_marginal_subset_discrete(prior, empty_dataset(scheme), {0}) == 0.0);

  const DiscreteDataset one(scheme, variable_names(1), {0});
  CHECK(log_marginal_subset_discrete(prior, one, {0}) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-12));
  // empty subset is exactly zero even with data
  CHECK(log_marginal_subset_discrete(prior, one, {}) == 0.0);
}

TEST_CASE("subset marginal agrees with the urn-product oracle") {
  Rng rng(9);
  const DiscreteScheme scheme({2, 3});
  for (int trial = 0; trial < 10; ++trial) {
    const auto prior = random_dirichlet_prior(scheme, rng);
    const auto data = random_discrete_dataset(scheme, variable_names(2), 25, rng);
    for (const std::vector<int>& subset : {std::vector<int>{0}, {1}, {0, 1}}) {
      const auto probabilities = prior.joint().marginal(subset);
      std::vector<int> observed;
      for (std::size_t l = 0; l < data.case_count(); ++l) {
        observed.push_back(
            static_cast<int>(scheme.subset_index(subset, data.row(l))));
      }
      const double oracle = urn_log_marginal(prior.alpha(), probabilities, observed);
      CHECK(log_marginal_subset_discrete(prior, data, subset) ==
            doctest::Approx(oracle).epsilon(1e-8));
    }
  }
}

TEST_CASE("family form and ratio form agree") {
  Rng rng(21);
  const DiscreteScheme scheme({2, 2, 3});
  const auto names = variable_names(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto prior = random_dirichlet_prior(scheme, rng);
    const auto data = random_discrete_dataset(scheme, names, 30, rng);
    const Dag dag = random_dag(names, rng);
    const double family = log_score_bde(dag, data, prior);
    const double ratio = log_score_bde_ratio(dag, data, prior);
    CHECK(std::abs(family - ratio) < 1e-9);
  }
}

TEST_CASE("score is zero on empty data and equivalent across orientations") {
  const DiscreteScheme scheme({2, 2});
  const auto names = variable_names(2);
  const auto prior = uniform_prior(scheme, 3.0);
  const Dag forward(names, {{0, 1}});
  const Dag backward(names, {{1, 0}});

  CHECK(log_score_bde(forward, empty_dataset(scheme), prior) == 0.0);

  Rng rng(23);
  const auto data = random_discrete_dataset(scheme, names, 50, rng);
  CHECK(std::abs(log_score_bde(forward, data, prior) -
                 log_score_bde(backward, data, prior)) < 1e-9);
}

TEST_CASE("ratio form telescopes for complete structures") {
  Rng rng(25);
  const DiscreteScheme scheme({2, 2, 2});
  const auto names = variable_names(3);
  const auto prior = random_dirichlet_prior(scheme, rng);
  const auto data = random_discrete_dataset(scheme, names, 20, rng);
  const std::vector<int> order{2, 0, 1};
  const Dag complete = complete_dag(names, order);
  CHECK(log_score_bde_ratio(complete, data, prior) ==
        doctest::Approx(log_marginal_subset_discrete(prior, data, {0, 1, 2})).epsilon(1e-12));

  const Dag empty(names);
  const double expected = log_marginal_subset_discrete(prior, data, {0}) +
                          log_marginal_subset_discrete(prior, data, {1}) +
                          log_marginal_subset_discrete(prior, data, {2});
  CHECK(log_score_bde_ratio(empty, data, prior) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("sequential predictive") {
  const DiscreteScheme scheme({2});
  const auto prior = uniform_prior(scheme, 2.0);
  const Dag dag(variable_names(1));
  const std::vector<int> zero{0};
  const std::vector<int> one{1};
  CHECK(log_sequential_predictive(dag, empty_dataset(scheme), zero, prior) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK(log_sequential_predictive(dag, empty_dataset(scheme), one, prior) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("prequential identity and predictive normalization") {
  Rng rng(27);
  const DiscreteScheme scheme({2, 3});
  const auto names = variable_names(2);
  const auto prior = random_dirichlet_prior(scheme, rng);
  const auto data = random_discrete_dataset(scheme, names, 15, rng);
  const Dag dag(names, {{0, 1}});

  double prequential = 0.0;
  for (std::size_t l = 0; l < data.case_count(); ++l) {
    prequential += log_sequential_predictive(dag, data.prefix(l), data.row(l), prior);
  }
  CHECK(std::abs(prequential - log_score_bde(dag, data, prior)) < 1e-8);

  // predictive over every next configuration sums to one
  const auto prefix = data.prefix(7);
  double total = 0.0;
  std::vector<int> config(2);
  for (std::size_t s = 0; s < scheme.state_count(); ++s) {
    scheme.decode(s, config);
    total += std::exp(log_sequential_predictive(dag, prefix, config, prior));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scores add over dataset concatenation through the posterior") {
  Rng rng(29);
  const DiscreteScheme scheme({2, 2});
  const auto names = variable_names(2);
  const auto prior = random_dirichlet_prior(scheme, rng);
  const auto data = random_discrete_dataset(scheme, names, 24, rng);
  const Dag dag(names, {{0, 1}});

  const auto first = data.prefix(10);
  std::vector<int> rest_cells;
  for (std::size_t l = 10; l < data.case_count(); ++l) {
    rest_cells.insert(rest_cells.end(), data.row(l).begin(), data.row(l).end());
  }
  const DiscreteDataset rest(scheme, names, std::move(rest_cells));

  const double whole = log_score_bde(dag, data, prior);
  const double split = log_score_bde(dag, first, prior) +
                       log_score_bde(dag, rest, posterior(prior, first));
  CHECK(std::abs(whole - split) < 1e-9);
}

TEST_CASE("factored prior density basics") {
  const DiscreteScheme scheme({2});
  const auto prior = uniform_prior(scheme, 2.0);  // Beta(1, 1)
  for (double theta : {0.1, 0.4, 0.9}) {
    const ConditionalDiscreteParams c(scheme, {0}, {{theta, 1.0 - theta}});
    CHECK(log_prior_density_conditionals(prior, c) == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("the two density routes agree and orders differ by the Jacobians") {
  Rng rng(31);
  const DiscreteScheme scheme({2, 2});
  const auto prior = random_dirichlet_prior(scheme, rng);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c_xy = random_conditionals(scheme, {0, 1}, rng);
    const auto joint = conditionals_to_joint(c_xy);
    const auto c_yx = joint_to_conditionals(joint, {1, 0});

    const double joint_density = log_dirichlet_joint_density(prior, joint);
    const double via_xy = log_prior_density_conditionals(prior, c_xy);
    const double via_yx = log_prior_density_conditionals(prior, c_yx);
    CHECK(std::abs(via_xy - (joint_density + log_jacobian_discrete(c_xy))) < 1e-8);
    // corresponding points under the two orders differ exactly by the
    // two Jacobians
    CHECK(std::abs((via_xy - log_jacobian_discrete(c_xy)) -
                   (via_yx - log_jacobian_discrete(c_yx))) < 1e-8);
  }
  CHECK(dirichlet_consistency_max_gap(prior, 50, 77) < 1e-8);
}

TEST_CASE("decomposability: shared families contribute identical terms") {
  Rng rng(33);
  const DiscreteScheme scheme({2, 2, 2});
  const auto names = variable_names(3);
  const auto prior = random_dirichlet_prior(scheme, rng);
  const auto data = random_discrete_dataset(scheme, names, 30, rng);

  // X3's family {X1} is shared between the two structures
  const Dag d1(names, {{0, 2}});
  const Dag d2(names, {{0, 2}, {0, 1}});
  const double family_d1 = log_family_score_bde(data, prior, 2, {0});
  CHECK(log_score_bde(d1, data, prior) - log_family_score_bde(data, prior, 0, {}) -
            log_family_score_bde(data, prior, 1, {}) ==
        doctest::Approx(family_d1).epsilon(1e-13));
  CHECK(log_score_bde(d2, data, prior) - log_family_score_bde(data, prior, 0, {}) -
            log_family_score_bde(data, prior, 1, {0}) ==
        doctest::Approx(family_d1).epsilon(1e-13));
}

TEST_CASE("non-factorizable prior fails the separability test") {
  // Pushforward of c / (theta_x (1 - theta_x)) into (theta_y, theta_x|y,
  // theta_x|y-bar) coordinates; the genuine Dirichlet pushforward is the
  // positive control.
  const DiscreteScheme scheme({2, 2});
  const auto nonfactorizable = [&](double ty, double txy, double txyb) {
    const ConditionalDiscreteParams c(scheme, {1, 0},
                                      {{ty, 1.0 - ty},
                                       {txy, 1.0 - txy, txyb, 1.0 - txyb}});
    const double tx = ty * txy + (1.0 - ty) * txyb;
    return -std::log(tx * (1.0 - tx)) + log_jacobian_discrete(c);
  };
  Rng rng(35);
  const auto prior = random_dirichlet_prior(scheme, rng);
  const auto dirichlet = [&](double ty, double txy, double txyb) {
    const ConditionalDiscreteParams c(scheme, {1, 0},
                                      {{ty, 1.0 - ty},
                                       {txy, 1.0 - txy, txyb, 1.0 - txyb}});
    return log_dirichlet_joint_density(prior, conditionals_to_joint(c)) +
           log_jacobian_discrete(c);
  };

  double worst_bad = 0.0;
  double worst_good = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::array<double, 3> p1{rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85),
                                   rng.uniform(0.15, 0.85)};
    const std::array<double, 3> p2{rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85),
                                   rng.uniform(0.15, 0.85)};
    worst_bad = std::max(worst_bad, std::abs(separability_gap(nonfactorizable, p1, p2)));
    worst_good = std::max(worst_good, std::abs(separability_gap(dirichlet, p1, p2)));
  }
  CHECK(worst_bad > 1e-3);
  CHECK(worst_good < 1e-8);
}

}  // TEST_SUITE
