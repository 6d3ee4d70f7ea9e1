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

// Independent numerical oracles for the test and acceptance suites.  These
// deliberately avoid the library's closed-form code paths: finite
// differences for Jacobians, LU elimination for determinants, adaptive
// quadrature for marginals, and an urn product for the Dirichlet subset
// marginal.

#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "bnscore/transforms.hpp"

namespace bnscore::testing {

// log |det| of a dense square matrix by LU with partial pivoting.
double lu_log_abs_det(std::vector<std::vector<double>> a);

// Recursive adaptive Simpson on [a, b] with an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol);

// Central finite-difference estimate of log |d(joint)/d(conditionals)|
// at the given conditional point.
double fd_log_jacobian_discrete(const ConditionalDiscreteParams& c, double step = 1e-5);

// Central finite-difference estimate of log |dW/d(v,B)| at a regression
// point with the identity order.
double fd_log_jacobian_gaussian(const RegressionParams& r, double step = 1e-5);

// Univariate normal-gamma marginal likelihood by nested 2-D adaptive
// quadrature over (mean, log precision); returns the log marginal.
double log_normal_gamma_marginal_quadrature(double mu0, double a_mu, double t0, double a_w,
                                            std::span<const double> data);

// Polya-urn product form of the Dirichlet-multinomial marginal:
// prod_l (alpha p(y_l) + n_before(y_l)) / (alpha + l - 1), in logs.
double urn_log_marginal(double alpha, std::span<const double> category_probabilities,
                        std::span<const int> observations);

// Two-point interaction statistic for a three-argument log density: zero
// whenever the density separates as f(a) + g(b) + h(c).  The middle
// coordinate is swapped between the points.
double separability_gap(const std::function<double(double, double, double)>& log_density,
                        const std::array<double, 3>& p1, const std::array<double, 3>& p2);

}  // namespace bnscore::testing
