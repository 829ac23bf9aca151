#include "chebbern/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "chebbern/errors.hpp"

namespace chebbern::linalg {

namespace {

struct Elimination {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;  // pivot column per eliminated row
  std::vector<bool> col_used;
};

using ExtendedMatrix = std::vector<std::vector<long double>>;

ExtendedMatrix widen(const Matrix& a) {
  ExtendedMatrix w(a.rows(), std::vector<long double>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) w[i][j] = a(i, j);
  return w;
}

// Row-echelon reduction with full pivoting, in place. Rows are swapped
// physically; columns are tracked through pivot_col / col_used.
Elimination eliminate(ExtendedMatrix& a, double pivot_rtol) {
  const std::size_t m = a.size();
  const std::size_t nc = m == 0 ? 0 : a[0].size();
  Elimination e;
  e.col_used.assign(nc, false);
  long double largest_pivot = 0.0L;

  for (std::size_t r = 0; r < m; ++r) {
    std::size_t pi = r, pj = nc;
    long double best = 0.0L;
    for (std::size_t i = r; i < m; ++i) {
      for (std::size_t j = 0; j < nc; ++j) {
        if (e.col_used[j]) continue;
        const long double v = std::abs(a[i][j]);
        if (v > best) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    }
    if (pj == nc || best <= pivot_rtol * largest_pivot || best == 0.0L) break;
    largest_pivot = std::max(largest_pivot, best);

    if (pi != r) std::swap(a[pi], a[r]);
    e.pivot_col.push_back(pj);
    e.col_used[pj] = true;

    for (std::size_t i = r + 1; i < m; ++i) {
      const long double factor = a[i][pj] / a[r][pj];
      if (factor == 0.0L) continue;
      for (std::size_t j = 0; j < nc; ++j) a[i][j] -= factor * a[r][j];
      a[i][pj] = 0.0L;
    }
    e.rank = r + 1;
  }
  return e;
}

}  // namespace

KernelResultExtended kernel_vector_extended(const Matrix& input, double pivot_rtol) {
  const std::size_t m = input.rows();
  const std::size_t nc = input.cols();
  KernelResultExtended result;

  if (m == 0) {
    // Unconstrained: unique kernel only in the one-column case.
    result.rank = 0;
    result.unique = (nc == 1);
    if (result.unique) result.kernel = {1.0L};
    return result;
  }

  ExtendedMatrix a = widen(input);
  for (auto& row : a) {
    long double row_max = 0.0L;
    for (long double v : row) row_max = std::max(row_max, std::abs(v));
    if (row_max > 0.0L)
      for (long double& v : row) v /= row_max;
  }
  Elimination e = eliminate(a, pivot_rtol);
  result.rank = e.rank;
  if (e.rank + 1 != nc) return result;  // nullity != 1

  std::size_t free_col = nc;
  for (std::size_t j = 0; j < nc; ++j)
    if (!e.col_used[j]) free_col = j;

  std::vector<long double> x(nc, 0.0L);
  x[free_col] = 1.0L;
  for (std::size_t r = e.rank; r-- > 0;) {
    const std::size_t jc = e.pivot_col[r];
    long double s = 0.0L;
    for (std::size_t j = 0; j < nc; ++j)
      if (j != jc) s += a[r][j] * x[j];
    x[jc] = -s / a[r][jc];
  }
  result.unique = true;
  result.kernel = std::move(x);
  return result;
}

KernelResult kernel_vector(const Matrix& a, double pivot_rtol) {
  KernelResultExtended extended = kernel_vector_extended(a, pivot_rtol);
  KernelResult result;
  result.unique = extended.unique;
  result.rank = extended.rank;
  result.kernel.assign(extended.kernel.begin(), extended.kernel.end());
  return result;
}

std::size_t rank_full_pivot(Matrix a, double pivot_rtol) {
  ExtendedMatrix w = widen(a);
  return eliminate(w, pivot_rtol).rank;
}

std::vector<double> solve_least_squares(const Matrix& a, const std::vector<double>& rhs) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (rhs.size() != m || m < n)
    throw SingularSystem("least squares: inconsistent dimensions");

  Matrix q = a;
  std::vector<double> y = rhs;
  std::vector<double> diag(n, 0.0);

  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < m; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    if (norm == 0.0) throw SingularSystem("least squares: zero column");

    const double alpha = q(j, j) >= 0.0 ? -norm : norm;
    std::vector<double> v(m - j);
    v[0] = q(j, j) - alpha;
    for (std::size_t i = j + 1; i < m; ++i) v[i - j] = q(i, j);
    double vtv = 0.0;
    for (double c : v) vtv += c * c;
    diag[j] = alpha;
    if (vtv == 0.0) continue;

    for (std::size_t k = j + 1; k < n; ++k) {
      double dot = 0.0;
      for (std::size_t i = j; i < m; ++i) dot += v[i - j] * q(i, k);
      const double f = 2.0 * dot / vtv;
      for (std::size_t i = j; i < m; ++i) q(i, k) -= f * v[i - j];
    }
    double dot = 0.0;
    for (std::size_t i = j; i < m; ++i) dot += v[i - j] * y[i];
    const double f = 2.0 * dot / vtv;
    for (std::size_t i = j; i < m; ++i) y[i] -= f * v[i - j];
    q(j, j) = alpha;
  }

  double dmax = 0.0;
  for (double d : diag) dmax = std::max(dmax, std::abs(d));
  std::vector<double> x(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    if (std::abs(diag[r]) <= 1e-13 * dmax)
      throw SingularSystem("least squares: numerically dependent columns");
    double s = y[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= q(r, k) * x[k];
    x[r] = s / diag[r];
  }
  return x;
}

}  // namespace chebbern::linalg
