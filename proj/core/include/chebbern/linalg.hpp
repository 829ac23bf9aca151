#pragma once

#include <cstddef>
#include <vector>

namespace chebbern::linalg {

/// Dense row-major matrix, just big enough for the endpoint systems here
/// (dimensions stay below ~14x14).
class Matrix {
public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

struct KernelResult {
  bool unique = false;          // true iff the null space is one-dimensional
  std::size_t rank = 0;
  std::vector<double> kernel;   // a spanning vector when unique
};

struct KernelResultExtended {
  bool unique = false;
  std::size_t rank = 0;
  std::vector<long double> kernel;
};

/// Null-space vector of an m x (m+1) system by Gaussian elimination with full
/// pivoting. Rows are scaled to unit max-norm first, and both the scaling and
/// the elimination run in extended precision: the endpoint-derivative systems
/// near the dimension cap amplify even one double rounding of the input by
/// ~1e7, which is enough to corrupt the interior-positivity checks.
/// Rank is decided by |pivot| >= pivot_rtol * |largest pivot|.
KernelResult kernel_vector(const Matrix& a, double pivot_rtol = 1e-10);

/// Same computation with the kernel left in extended precision, for callers
/// that keep working on it before rounding.
KernelResultExtended kernel_vector_extended(const Matrix& a, double pivot_rtol = 1e-10);

/// Numerical rank by the same full-pivoting elimination.
std::size_t rank_full_pivot(Matrix a, double pivot_rtol = 1e-10);

/// Least-squares solution of an overdetermined system via Householder QR.
/// Throws SingularSystem if a column of A is numerically dependent.
std::vector<double> solve_least_squares(const Matrix& a, const std::vector<double>& rhs);

}  // namespace chebbern::linalg
