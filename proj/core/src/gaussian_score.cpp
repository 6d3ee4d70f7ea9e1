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

#include "bnscore/gaussian_score.hpp"

#include <algorithm>
#include <cmath>

#include "bnscore/error.hpp"
#include "bnscore/rng.hpp"

namespace bnscore {

namespace {

constexpr double kLogPi = 1.1447298858494001741434273513531;
constexpr double kLog2 = 0.69314718055994530941723212145818;
constexpr double kLog2Pi = kLogPi + kLog2;

std::vector<int> sorted_unique(std::vector<int> vars, int n) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  for (int v : vars) {
    require(v >= 0 && v < n, ErrorKind::usage, "subset index out of range");
  }
  return vars;
}

// log of the multivariate gamma function Gamma_p(a).
double log_multigamma(int p, double a) {
  double result = 0.25 * static_cast<double>(p * (p - 1)) * kLogPi;
  for (int i = 1; i <= p; ++i) {
    result += std::lgamma(a + 0.5 * static_cast<double>(1 - i));
  }
  return result;
}

void check_regression(const NormalWishartPrior& prior, const RegressionParams& r) {
  const auto n = static_cast<std::size_t>(prior.variable_count());
  require(r.order.size() == n && r.intercepts.size() == n && r.variances.size() == n &&
              r.coefficients.size() == n,
          ErrorKind::usage, "regression parameters do not match the prior dimension");
  for (std::size_t i = 0; i < n; ++i) {
    require(r.variances[i] > 0.0, ErrorKind::domain, "conditional variances must be positive");
  }
}

}  // namespace

NormalWishartPrior::NormalWishartPrior(std::vector<double> mu0, double a_mu, Matrix t0,
                                       double a_w)
    : mu0_(std::move(mu0)), a_mu_(a_mu), t0_(std::move(t0)), a_w_(a_w) {
  const auto n = mu0_.size();
  require(n >= 1, ErrorKind::usage, "prior needs at least one variable");
  require(t0_.rows() == n && t0_.cols() == n, ErrorKind::usage,
          "scale matrix dimension must match the mean vector");
  require(a_mu_ > 0.0, ErrorKind::domain, "a_mu must be positive");
  require(a_w_ > static_cast<double>(n) - 1.0, ErrorKind::domain,
          "a_w must exceed n - 1");
  require(t0_.is_symmetric(), ErrorKind::usage, "scale matrix must be symmetric");
  require(ldlt(t0_).positive_definite, ErrorKind::numeric,
          "scale matrix must be positive definite");
  for (double value : mu0_) {
    require(std::isfinite(value), ErrorKind::domain, "prior mean must be finite");
  }
}

GaussianDataset::GaussianDataset(std::vector<std::string> names, std::vector<double> cells)
    : names_(std::move(names)), cells_(std::move(cells)) {
  require(!names_.empty(), ErrorKind::usage, "dataset needs at least one variable");
  require(cells_.size() % names_.size() == 0, ErrorKind::usage,
          "cell count must be a multiple of the variable count");
  m_ = cells_.size() / names_.size();
  for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
    require(std::isfinite(cells_[idx]), ErrorKind::usage,
            "non-finite value at row " + std::to_string(idx / names_.size() + 1));
  }
}

std::span<const double> GaussianDataset::row(std::size_t index) const {
  return std::span(cells_).subspan(index * names_.size(), names_.size());
}

GaussianDataset GaussianDataset::prefix(std::size_t count) const {
  require(count <= m_, ErrorKind::usage, "prefix longer than the dataset");
  return GaussianDataset(
      names_, std::vector<double>(cells_.begin(),
                                  cells_.begin() + static_cast<std::ptrdiff_t>(count * names_.size())));
}

GaussianSufficientStats sufficient_stats(const GaussianDataset& data) {
  const auto n = static_cast<std::size_t>(data.variable_count());
  GaussianSufficientStats stats;
  stats.m = data.case_count();
  stats.mean.assign(n, 0.0);
  stats.scatter = Matrix(n, n, 0.0);
  if (stats.m == 0) return stats;
  for (std::size_t l = 0; l < stats.m; ++l) {
    const auto row = data.row(l);
    for (std::size_t i = 0; i < n; ++i) stats.mean[i] += row[i];
  }
  for (std::size_t i = 0; i < n; ++i) stats.mean[i] /= static_cast<double>(stats.m);
  std::vector<double> centered(n);
  for (std::size_t l = 0; l < stats.m; ++l) {
    const auto row = data.row(l);
    for (std::size_t i = 0; i < n; ++i) centered[i] = row[i] - stats.mean[i];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) stats.scatter(i, j) += centered[i] * centered[j];
    }
  }
  return stats;
}

NormalWishartPrior posterior_update(const NormalWishartPrior& prior,
                                    const GaussianSufficientStats& stats) {
  const auto n = static_cast<std::size_t>(prior.variable_count());
  require(stats.mean.size() == n && stats.scatter.rows() == n, ErrorKind::usage,
          "statistics dimension must match the prior");
  if (stats.m == 0) return prior;

  const auto m = static_cast<double>(stats.m);
  const double a_mu = prior.a_mu();
  std::vector<double> mu_m(n);
  for (std::size_t i = 0; i < n; ++i) {
    mu_m[i] = (a_mu * prior.mu0()[i] + m * stats.mean[i]) / (a_mu + m);
  }
  const double shrink = a_mu * m / (a_mu + m);
  Matrix t_m = prior.t0();
  for (std::size_t i = 0; i < n; ++i) {
    const double di = prior.mu0()[i] - stats.mean[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double dj = prior.mu0()[j] - stats.mean[j];
      t_m(i, j) += stats.scatter(i, j) + shrink * di * dj;
    }
  }
  // The constructor re-checks that T_m stayed positive definite.
  return NormalWishartPrior(std::move(mu_m), a_mu + m, std::move(t_m), prior.a_w() + m);
}

double log_c(int l, double alpha) {
  require(l >= 1, ErrorKind::usage, "l must be at least 1");
  require(alpha > static_cast<double>(l) - 1.0, ErrorKind::domain,
          "log_c requires alpha > l - 1");
  double result = 0.0;
  for (int i = 1; i <= l; ++i) {
    result += std::lgamma(0.5 * (alpha + 1.0 - static_cast<double>(i)));
  }
  return result;
}

double log_marginal_subset_gaussian(const NormalWishartPrior& prior,
                                    const GaussianSufficientStats& stats,
                                    std::vector<int> subset) {
  const int n = prior.variable_count();
  subset = sorted_unique(std::move(subset), n);
  const int l = static_cast<int>(subset.size());
  if (l == 0 || stats.m == 0) return 0.0;
  require(stats.mean.size() == static_cast<std::size_t>(n), ErrorKind::usage,
          "statistics dimension must match the prior");

  const auto m = static_cast<double>(stats.m);
  const double a_mu = prior.a_mu();
  const double a_w_sub = prior.a_w() - static_cast<double>(n) + static_cast<double>(l);

  const Matrix t0_sub = submatrix(prior.t0(), subset);
  Matrix t_m_sub = t0_sub;
  const double shrink = a_mu * m / (a_mu + m);
  for (int i = 0; i < l; ++i) {
    const auto vi = static_cast<std::size_t>(subset[static_cast<std::size_t>(i)]);
    const double di = prior.mu0()[vi] - stats.mean[vi];
    for (int j = 0; j < l; ++j) {
      const auto vj = static_cast<std::size_t>(subset[static_cast<std::size_t>(j)]);
      const double dj = prior.mu0()[vj] - stats.mean[vj];
      t_m_sub(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) +=
          stats.scatter(vi, vj) + shrink * di * dj;
    }
  }

  const LdltFactor f0 = ldlt(t0_sub);
  const LdltFactor fm = ldlt(t_m_sub);
  require(f0.positive_definite && fm.positive_definite, ErrorKind::numeric,
          "degenerate scale submatrix in subset marginal");

  return -0.5 * static_cast<double>(l) * m * kLogPi +
         0.5 * static_cast<double>(l) * (std::log(a_mu) - std::log(a_mu + m)) +
         log_c(l, a_w_sub + m) - log_c(l, a_w_sub) + 0.5 * a_w_sub * ldlt_log_det(f0) -
         0.5 * (a_w_sub + m) * ldlt_log_det(fm);
}

double log_marginal_subset_gaussian(const NormalWishartPrior& prior,
                                    const GaussianDataset& data, std::vector<int> subset) {
  require(data.variable_count() == prior.variable_count(), ErrorKind::usage,
          "dataset and prior disagree on dimension");
  return log_marginal_subset_gaussian(prior, sufficient_stats(data), std::move(subset));
}

double log_family_score_bge(const GaussianSufficientStats& stats,
                            const NormalWishartPrior& prior, int node,
                            std::vector<int> parents) {
  std::vector<int> family = parents;
  family.push_back(node);
  return log_marginal_subset_gaussian(prior, stats, std::move(family)) -
         log_marginal_subset_gaussian(prior, stats, std::move(parents));
}

double log_score_bge(const Dag& dag, const GaussianDataset& data,
                     const NormalWishartPrior& prior) {
  require(dag.names() == data.names(), ErrorKind::usage,
          "dag and dataset disagree on variable names");
  require(data.variable_count() == prior.variable_count(), ErrorKind::usage,
          "dataset and prior disagree on dimension");
  const GaussianSufficientStats stats = sufficient_stats(data);
  double total = 0.0;
  for (int i = 0; i < dag.size(); ++i) {
    total += log_family_score_bge(stats, prior, i, dag.parents(i));
  }
  return total;
}

double log_nw_density_joint(const NormalWishartPrior& prior, std::span<const double> mu,
                            const Matrix& w) {
  const int n = prior.variable_count();
  require(mu.size() == static_cast<std::size_t>(n) &&
              w.rows() == static_cast<std::size_t>(n) && w.cols() == static_cast<std::size_t>(n),
          ErrorKind::usage, "point dimension must match the prior");
  const LdltFactor fw = ldlt(w);
  require(fw.positive_definite, ErrorKind::numeric,
          "density requested at a non positive definite precision matrix");
  const double log_det_w = ldlt_log_det(fw);

  std::vector<double> diff(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) diff[i] = mu[i] - prior.mu0()[i];
  const double quad = quadratic_form(w, diff);

  double trace = 0.0;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = 0; j < w.cols(); ++j) trace += prior.t0()(i, j) * w(j, i);
  }

  const double nd = static_cast<double>(n);
  const double log_normal =
      0.5 * nd * (std::log(prior.a_mu()) - kLog2Pi) + 0.5 * log_det_w -
      0.5 * prior.a_mu() * quad;
  const double log_wishart =
      0.5 * (prior.a_w() - nd - 1.0) * log_det_w - 0.5 * trace +
      0.5 * prior.a_w() * ldlt_log_det(ldlt(prior.t0())) - 0.5 * prior.a_w() * nd * kLog2 -
      log_multigamma(n, 0.5 * prior.a_w());
  return log_normal + log_wishart;
}

double log_nw_density_regression(const NormalWishartPrior& prior, const RegressionParams& r) {
  check_regression(prior, r);
  const JointGaussianParams g = regression_to_joint(r);
  return log_nw_density_joint(prior, g.mean, g.precision) + log_jacobian_gaussian(r.variances);
}

double log_nw_density_regression_factored(const NormalWishartPrior& prior,
                                          const RegressionParams& r) {
  check_regression(prior, r);
  const int n = prior.variable_count();
  const double nd = static_cast<double>(n);

  // The prior's scale matrix and mean in the regression order.
  Matrix t0(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  std::vector<double> mu0(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    mu0[static_cast<std::size_t>(i)] =
        prior.mu0()[static_cast<std::size_t>(r.order[static_cast<std::size_t>(i)])];
    for (int j = 0; j < n; ++j) {
      t0(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          prior.t0()(static_cast<std::size_t>(r.order[static_cast<std::size_t>(i)]),
                     static_cast<std::size_t>(r.order[static_cast<std::size_t>(j)]));
    }
  }

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = r.variances[static_cast<std::size_t>(i)];
    const auto& b = r.coefficients[static_cast<std::size_t>(i)];

    // Pivot and regression of t0's column i on the leading block.
    double pivot = t0(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
    double quad = 0.0;
    double log_det_block = 0.0;
    if (i > 0) {
      std::vector<int> lead(static_cast<std::size_t>(i));
      for (int j = 0; j < i; ++j) lead[static_cast<std::size_t>(j)] = j;
      const Matrix block = submatrix(t0, lead);
      const LdltFactor fb = ldlt(block);
      require(fb.positive_definite, ErrorKind::numeric,
              "leading block of the scale matrix is not positive definite");
      log_det_block = ldlt_log_det(fb);
      std::vector<double> column(static_cast<std::size_t>(i));
      for (int j = 0; j < i; ++j) {
        column[static_cast<std::size_t>(j)] =
            t0(static_cast<std::size_t>(j), static_cast<std::size_t>(i));
      }
      const std::vector<double> b_hat = ldlt_solve(fb, column);
      double cross = 0.0;
      for (int j = 0; j < i; ++j) {
        cross += column[static_cast<std::size_t>(j)] * b_hat[static_cast<std::size_t>(j)];
      }
      pivot -= cross;
      std::vector<double> centered(static_cast<std::size_t>(i));
      for (int j = 0; j < i; ++j) {
        centered[static_cast<std::size_t>(j)] =
            b[static_cast<std::size_t>(j)] - b_hat[static_cast<std::size_t>(j)];
      }
      quad = quadratic_form(block, centered);
    }
    require(pivot > kPositivityTol, ErrorKind::numeric,
            "scale matrix pivot vanished in the factored density");

    // Coefficients given variance: normal with mean b_hat, precision block/v.
    const double id = static_cast<double>(i);
    total += 0.5 * (log_det_block - id * std::log(v)) - 0.5 * id * kLog2Pi - 0.5 * quad / v;

    // Variance: inverse gamma with shape (a_w - n + i + 1)/2, rate pivot/2.
    const double shape = 0.5 * (prior.a_w() - nd + id + 1.0);
    total += shape * std::log(0.5 * pivot) - std::lgamma(shape) -
             (shape + 1.0) * std::log(v) - 0.5 * pivot / v;

    // Intercept: normal with mean mu0_i - sum_j b_ji mu0_j, precision a_mu/v.
    double m0 = mu0[static_cast<std::size_t>(i)];
    for (int j = 0; j < i; ++j) {
      m0 -= b[static_cast<std::size_t>(j)] * mu0[static_cast<std::size_t>(j)];
    }
    const double tau = prior.a_mu() / v;
    const double dm = r.intercepts[static_cast<std::size_t>(i)] - m0;
    total += 0.5 * (std::log(tau) - kLog2Pi) - 0.5 * tau * dm * dm;
  }
  return total;
}

double normal_wishart_consistency_max_gap(const NormalWishartPrior& prior, int points,
                                          std::uint64_t seed) {
  require(points > 0, ErrorKind::usage, "point count must be positive");
  const int n = prior.variable_count();
  Rng rng(seed);
  double worst = 0.0;
  for (int point = 0; point < points; ++point) {
    RegressionParams r;
    r.order.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r.order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(r.order);
    r.intercepts.resize(static_cast<std::size_t>(n));
    r.variances.resize(static_cast<std::size_t>(n));
    r.coefficients.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      r.intercepts[static_cast<std::size_t>(i)] = rng.uniform(-2.0, 2.0);
      r.variances[static_cast<std::size_t>(i)] = rng.uniform(0.3, 3.0);
      r.coefficients[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i));
      for (int j = 0; j < i; ++j) {
        r.coefficients[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            rng.uniform(-1.5, 1.5);
      }
    }
    const double joint_route = log_nw_density_regression(prior, r);
    const double factored_route = log_nw_density_regression_factored(prior, r);
    worst = std::max(worst, std::abs(joint_route - factored_route));
  }
  return worst;
}

}  // namespace bnscore
