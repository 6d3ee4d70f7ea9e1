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

#include "bnscore/linalg.hpp"

#include <cmath>
#include <cstdlib>

#include "bnscore/error.hpp"

namespace bnscore {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool Matrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i + 1; j < cols_; ++j) {
      const double diff = std::abs((*this)(i, j) - (*this)(j, i));
      const double scale = std::max(1.0, std::abs((*this)(i, j)));
      if (diff > tol * scale) return false;
    }
  }
  return true;
}

LdltFactor ldlt(const Matrix& a, double pivot_tol) {
  require(a.rows() == a.cols(), ErrorKind::usage, "ldlt: matrix must be square");
  const std::size_t n = a.rows();
  LdltFactor f;
  f.l = Matrix::identity(n);
  f.d.assign(n, 0.0);
  f.positive_definite = true;
  for (std::size_t j = 0; j < n; ++j) {
    double dj = a(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= f.l(j, k) * f.l(j, k) * f.d[k];
    f.d[j] = dj;
    if (!(dj > pivot_tol)) {
      f.positive_definite = false;
      return f;
    }
    for (std::size_t i = j + 1; i < n; ++i) {
      double lij = a(i, j);
      for (std::size_t k = 0; k < j; ++k) lij -= f.l(i, k) * f.l(j, k) * f.d[k];
      f.l(i, j) = lij / dj;
    }
  }
  return f;
}

double ldlt_log_det(const LdltFactor& factor) {
  require(factor.positive_definite, ErrorKind::numeric,
          "log-determinant requested for a factorization that is not positive definite");
  double sum = 0.0;
  for (double pivot : factor.d) sum += std::log(pivot);
  return sum;
}

std::vector<double> ldlt_solve(const LdltFactor& factor, std::span<const double> b) {
  require(factor.positive_definite, ErrorKind::numeric,
          "solve requested for a factorization that is not positive definite");
  const std::size_t n = factor.d.size();
  require(b.size() == n, ErrorKind::usage, "ldlt_solve: dimension mismatch");
  std::vector<double> x(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) x[i] -= factor.l(i, k) * x[k];
  }
  for (std::size_t i = 0; i < n; ++i) x[i] /= factor.d[i];
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) x[ii] -= factor.l(k, ii) * x[k];
  }
  return x;
}

Matrix submatrix(const Matrix& a, std::span<const int> indices) {
  Matrix out(indices.size(), indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) {
      out(i, j) = a(static_cast<std::size_t>(indices[i]), static_cast<std::size_t>(indices[j]));
    }
  }
  return out;
}

double quadratic_form(const Matrix& a, std::span<const double> x) {
  require(a.rows() == x.size() && a.cols() == x.size(), ErrorKind::usage,
          "quadratic_form: dimension mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += a(i, j) * x[j];
    total += x[i] * row;
  }
  return total;
}

double kahan_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace bnscore
