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

#include "oracles.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace bnscore::testing {

namespace {

constexpr double kLog2Pi = 1.8378770664093454835606594728112;

double simpson_slice(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_slice(a, fa, m, fm, flm);
  const double right = simpson_slice(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = simpson_slice(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, abs_tol, 40);
}

double lu_log_abs_det(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  double log_det = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot_row = col;
    for (std::size_t row = col + 1; row < n; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot_row][col])) pivot_row = row;
    }
    if (pivot_row != col) std::swap(a[pivot_row], a[col]);
    const double pivot = a[col][col];
    if (pivot == 0.0) throw std::runtime_error("singular matrix in lu_log_abs_det");
    log_det += std::log(std::abs(pivot));
    for (std::size_t row = col + 1; row < n; ++row) {
      const double factor = a[row][col] / pivot;
      for (std::size_t k = col; k < n; ++k) a[row][k] -= factor * a[col][k];
    }
  }
  return log_det;
}

namespace {

// Free coordinates of a conditional parameterization: per order position
// and predecessor row, all child values except the last.
std::vector<double> conditional_free_coords(const ConditionalDiscreteParams& c) {
  std::vector<double> t;
  for (int pos = 0; pos < c.scheme().size(); ++pos) {
    const int r = c.scheme().cardinality(c.variable_at(pos));
    for (std::size_t row = 0; row < c.predecessor_states(pos); ++row) {
      for (int k = 0; k + 1 < r; ++k) t.push_back(c.value(pos, row, k));
    }
  }
  return t;
}

ConditionalDiscreteParams conditionals_from_free_coords(const ConditionalDiscreteParams& shape,
                                                        const std::vector<double>& t) {
  std::vector<std::vector<double>> tables;
  std::size_t cursor = 0;
  for (int pos = 0; pos < shape.scheme().size(); ++pos) {
    const auto r = static_cast<std::size_t>(shape.scheme().cardinality(shape.variable_at(pos)));
    const std::size_t rows = shape.predecessor_states(pos);
    std::vector<double> table(rows * r);
    for (std::size_t row = 0; row < rows; ++row) {
      double sum = 0.0;
      for (std::size_t k = 0; k + 1 < r; ++k) {
        table[row * r + k] = t[cursor++];
        sum += table[row * r + k];
      }
      table[row * r + (r - 1)] = 1.0 - sum;
    }
    tables.push_back(std::move(table));
  }
  return ConditionalDiscreteParams(shape.scheme(), shape.order(), std::move(tables));
}

// Joint table restricted to its free coordinates (the last configuration
// is determined by normalization).
std::vector<double> joint_free_coords(const ConditionalDiscreteParams& c) {
  const JointDiscreteParams joint = conditionals_to_joint(c);
  return std::vector<double>(joint.table().begin(), joint.table().end() - 1);
}

}  // namespace

double fd_log_jacobian_discrete(const ConditionalDiscreteParams& c, double step) {
  const std::vector<double> t0 = conditional_free_coords(c);
  const std::size_t dim = t0.size();
  std::vector<std::vector<double>> jacobian(dim, std::vector<double>(dim, 0.0));
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> plus = t0;
    std::vector<double> minus = t0;
    plus[j] += step;
    minus[j] -= step;
    const std::vector<double> f_plus = joint_free_coords(conditionals_from_free_coords(c, plus));
    const std::vector<double> f_minus =
        joint_free_coords(conditionals_from_free_coords(c, minus));
    for (std::size_t i = 0; i < dim; ++i) {
      jacobian[i][j] = (f_plus[i] - f_minus[i]) / (2.0 * step);
    }
  }
  return lu_log_abs_det(std::move(jacobian));
}

namespace {

std::vector<double> gaussian_free_coords(const RegressionParams& r) {
  std::vector<double> t = r.variances;
  for (std::size_t i = 0; i < r.order.size(); ++i) {
    for (double b : r.coefficients[i]) t.push_back(b);
  }
  return t;
}

RegressionParams regression_from_free_coords(const RegressionParams& shape,
                                             const std::vector<double>& t) {
  RegressionParams r = shape;
  const std::size_t n = shape.order.size();
  for (std::size_t i = 0; i < n; ++i) r.variances[i] = t[i];
  std::size_t cursor = n;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < r.coefficients[i].size(); ++j) {
      r.coefficients[i][j] = t[cursor++];
    }
  }
  return r;
}

// Upper triangle (including diagonal) of the precision matrix.
std::vector<double> precision_free_coords(const RegressionParams& r) {
  const Matrix w = regression_to_joint(r).precision;
  std::vector<double> out;
  for (std::size_t i = 0; i < w.rows(); ++i) {
    for (std::size_t j = i; j < w.cols(); ++j) out.push_back(w(i, j));
  }
  return out;
}

}  // namespace

double fd_log_jacobian_gaussian(const RegressionParams& r, double step) {
  const std::vector<double> t0 = gaussian_free_coords(r);
  const std::size_t dim = t0.size();
  std::vector<std::vector<double>> jacobian(dim, std::vector<double>(dim, 0.0));
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<double> plus = t0;
    std::vector<double> minus = t0;
    plus[j] += step;
    minus[j] -= step;
    const std::vector<double> f_plus =
        precision_free_coords(regression_from_free_coords(r, plus));
    const std::vector<double> f_minus =
        precision_free_coords(regression_from_free_coords(r, minus));
    for (std::size_t i = 0; i < dim; ++i) {
      jacobian[i][j] = (f_plus[i] - f_minus[i]) / (2.0 * step);
    }
  }
  return lu_log_abs_det(std::move(jacobian));
}

namespace {

// Adaptive Simpson can converge prematurely when a narrow peak falls
// between the first probe points of a wide interval, so force an initial
// subdivision into equal panels.
double panelled_simpson(const std::function<double(double)>& f, double a, double b, int panels,
                        double abs_tol) {
  double total = 0.0;
  const double width = (b - a) / static_cast<double>(panels);
  for (int p = 0; p < panels; ++p) {
    total += adaptive_simpson(f, a + p * width, a + (p + 1) * width,
                              abs_tol / static_cast<double>(panels));
  }
  return total;
}

}  // namespace

double log_normal_gamma_marginal_quadrature(double mu0, double a_mu, double t0, double a_w,
                                            std::span<const double> data) {
  const auto m = static_cast<double>(data.size());
  double sum = 0.0;
  for (double x : data) sum += x;
  const double xbar = m > 0 ? sum / m : 0.0;
  double scatter = 0.0;
  for (double x : data) scatter += (x - xbar) * (x - xbar);

  // Posterior quantities, used only to center and bound the grid.
  const double mu_center = (a_mu * mu0 + sum) / (a_mu + m);
  const double shape_m = 0.5 * (a_w + m);
  const double rate_m =
      0.5 * (t0 + scatter + a_mu * m / (a_mu + m) * (mu0 - xbar) * (mu0 - xbar));
  const double u_mode = std::log(shape_m / rate_m);

  const auto log_integrand = [&](double mu, double u) {
    const double w = std::exp(u);
    double value = 0.0;
    for (double x : data) {
      value += 0.5 * (std::log(w) - kLog2Pi) - 0.5 * w * (x - mu) * (x - mu);
    }
    value += 0.5 * (std::log(a_mu * w) - kLog2Pi) - 0.5 * a_mu * w * (mu - mu0) * (mu - mu0);
    // Gamma(shape a_w/2, rate t0/2) density of w, plus the log-space
    // Jacobian dw = w du.
    value += 0.5 * a_w * std::log(0.5 * t0) - std::lgamma(0.5 * a_w) +
             (0.5 * a_w - 1.0) * std::log(w) - 0.5 * t0 * w;
    value += u;
    return value;
  };
  const double shift = log_integrand(mu_center, u_mode);

  // Log height of the u-profile (mu integrated out analytically only for
  // the purpose of bounding: the mu slice at the center tracks the peak).
  const auto profile = [&](double u) {
    return log_integrand(mu_center, u) - shift - 0.25 * u;  // -u/4 tracks sd growth crudely
  };
  double u_lo = u_mode;
  while (profile(u_lo) > -45.0 && u_lo > u_mode - 400.0) u_lo -= 0.5;
  double u_hi = u_mode;
  while (profile(u_hi) > -45.0 && u_hi < u_mode + 400.0) u_hi += 0.5;
  u_lo -= 1.0;
  u_hi += 1.0;

  const auto inner = [&](double u) {
    const double w = std::exp(u);
    const double sd = 1.0 / std::sqrt((a_mu + m) * w);
    // Substitute z = (mu - center)/sd so the inner integrand is O(1).
    const auto g = [&](double z) {
      return std::exp(log_integrand(mu_center + z * sd, u) - shift);
    };
    return sd * panelled_simpson(g, -12.0, 12.0, 8, 1e-12);
  };

  const double first_pass = panelled_simpson(inner, u_lo, u_hi, 64, 1e-8);
  const double second_pass =
      panelled_simpson(inner, u_lo, u_hi, 64, std::max(first_pass, 1e-30) * 1e-9);
  return std::log(second_pass) + shift;
}

double urn_log_marginal(double alpha, std::span<const double> category_probabilities,
                        std::span<const int> observations) {
  std::vector<double> seen(category_probabilities.size(), 0.0);
  double log_p = 0.0;
  double total = alpha;
  for (int code : observations) {
    const auto k = static_cast<std::size_t>(code);
    log_p += std::log((alpha * category_probabilities[k] + seen[k]) / total);
    seen[k] += 1.0;
    total += 1.0;
  }
  return log_p;
}

double separability_gap(const std::function<double(double, double, double)>& log_density,
                        const std::array<double, 3>& p1, const std::array<double, 3>& p2) {
  return log_density(p1[0], p1[1], p1[2]) + log_density(p2[0], p2[1], p2[2]) -
         log_density(p1[0], p2[1], p1[2]) - log_density(p2[0], p1[1], p2[2]);
}

}  // namespace bnscore::testing
