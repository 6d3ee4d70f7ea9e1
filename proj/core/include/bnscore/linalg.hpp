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

namespace bnscore {

// Dense row-major matrix.  Everything in this project is desk scale (a
// handful of variables), so no effort is spent on blocking or BLAS.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_symmetric(double tol = 1e-9) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Root-free symmetric factorization A = L D L' without pivoting; the
// elimination order is the storage order, which callers control by
// permuting A first.
struct LdltFactor {
  Matrix l;               // unit lower triangular
  std::vector<double> d;  // pivots
  bool positive_definite = false;
};

// positive_definite is false as soon as a pivot is <= pivot_tol.
LdltFactor ldlt(const Matrix& a, double pivot_tol = 1e-12);

// Sum of log pivots; caller must have checked positive_definite.
double ldlt_log_det(const LdltFactor& factor);

// Solves A x = b given the factorization of A.
std::vector<double> ldlt_solve(const LdltFactor& factor, std::span<const double> b);

// A restricted to the given rows/columns (indices need not be sorted).
Matrix submatrix(const Matrix& a, std::span<const int> indices);

// x' A x
double quadratic_form(const Matrix& a, std::span<const double> x);

// Compensated sum; used wherever a long accumulation feeds a tight tolerance.
double kahan_sum(std::span<const double> values);

}  // namespace bnscore
