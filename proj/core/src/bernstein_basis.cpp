#include "chebbern/bernstein_basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chebbern/linalg.hpp"

namespace chebbern {

namespace {

constexpr double kPivotRtol = 1e-10;
constexpr double kZeroOrderRtol = 1e-9;
constexpr double kExactOrderRtol = 1e-6;
constexpr double kInteriorNegativityRtol = 1e-12;
constexpr int kPositivityGridSize = 513;

// Derivative row of the raw basis at x, scaled to unit max-norm. Derivative
// rows at different orders differ by factorial magnitudes, so each row gets
// its own scale.
std::vector<double> scaled_derivative_row(const ChebyshevSpace& space, double x, int order) {
  std::vector<double> row(space.dimension());
  double scale = 0.0;
  for (std::size_t j = 0; j < space.dimension(); ++j) {
    row[j] = space.eval_member(j, x, order);
    scale = std::max(scale, std::abs(row[j]));
  }
  if (scale > 0.0)
    for (double& v : row) v /= scale;
  return row;
}

}  // namespace

double BernsteinBasis::eval(std::size_t k, double x, int order) const {
  if (k >= coeffs.size()) throw std::out_of_range("basis index out of range");
  if (order < 0 || order > degree()) throw std::out_of_range("derivative order out of range");
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs[k].size(); ++j)
    sum += coeffs[k][j] * space.eval_member(j, x, order);
  return sum;
}

double eval_basis(const BernsteinBasis& basis, std::size_t k, double x, int order) {
  return basis.eval(k, x, order);
}

BernsteinBasis build_bernstein_basis(const ChebyshevSpace& space) {
  const int n = space.degree();
  const std::size_t dim = space.dimension();
  const Interval& iv = space.interval();
  const double mid = iv.midpoint();

  BernsteinBasis basis{space, {}, Normalization::midpoint_one};
  basis.coeffs.resize(dim);

  for (int k = 0; k <= n; ++k) {
    // n constraints: derivatives 0..k-1 vanish at a, derivatives 0..n-k-1
    // vanish at b. The one-dimensional kernel of this system is p_{n,k}.
    // Rows go in unscaled; the kernel solve normalizes them in extended
    // precision where the rounding does not feed the ill conditioning.
    linalg::Matrix constraints(static_cast<std::size_t>(n), dim);
    std::size_t r = 0;
    for (int i = 0; i < k; ++i, ++r)
      for (std::size_t j = 0; j < dim; ++j)
        constraints(r, j) = space.eval_member(j, iv.a, i);
    for (int i = 0; i < n - k; ++i, ++r)
      for (std::size_t j = 0; j < dim; ++j)
        constraints(r, j) = space.eval_member(j, iv.b, i);

    // The kernel stays in extended precision through the checks: near the
    // dimension cap the monomial representation cancels catastrophically at
    // the endpoints, and plain doubles produce false sign-change rejections.
    auto kernel = linalg::kernel_vector_extended(constraints, kPivotRtol);
    if (!kernel.unique) throw DegenerateSpace(k);
    std::vector<long double> c = std::move(kernel.kernel);

    auto value_at = [&](double x, int order) {
      long double s = 0.0L;
      for (std::size_t j = 0; j < dim; ++j) s += c[j] * space.eval_member(j, x, order);
      return s;
    };
    // The raw basis values only carry double precision; the computed sum is
    // exact up to this bound, and dips below it cannot be distinguished from
    // zero. Without the floor, high-degree monomial bases false-fail the
    // sign check near the endpoints.
    auto noise_floor_at = [&](double x) {
      long double s = 0.0L;
      for (std::size_t j = 0; j < dim; ++j)
        s += std::abs(c[j] * space.eval_member(j, x, 0));
      return 16.0L * 2.2e-16L * s;
    };

    const long double mid_value = value_at(mid, 0);

    std::vector<long double> grid_values(kPositivityGridSize);
    long double grid_max = 0.0L;
    for (int g = 0; g < kPositivityGridSize; ++g) {
      const double x = iv.a + iv.length() * (g + 1) / (kPositivityGridSize + 1);
      grid_values[g] = value_at(x, 0);
      grid_max = std::max(grid_max, std::abs(grid_values[g]));
    }
    if (std::abs(mid_value) <= 1e-12L * grid_max)
      throw NotECT(k, mid, "candidate basis function vanishes at the midpoint");

    const long double scale = 1.0L / mid_value;  // also flips sign when mid_value < 0
    for (long double& v : c) v *= scale;
    for (long double& v : grid_values) v *= scale;
    grid_max *= std::abs(scale);

    for (int g = 0; g < kPositivityGridSize; ++g) {
      const double x = iv.a + iv.length() * (g + 1) / (kPositivityGridSize + 1);
      const long double tolerance = kInteriorNegativityRtol * grid_max + noise_floor_at(x);
      if (grid_values[g] < -tolerance)
        throw NotECT(k, x, "candidate basis function changes sign in the interior");
    }

    // Exact-order verification against the scaled rows: a silent higher-order
    // zero would corrupt the node and weight formulas downstream.
    long double coeff_scale = 0.0L;
    for (long double v : c) coeff_scale = std::max(coeff_scale, std::abs(v));
    auto scaled_value = [&](double x, int order) {
      const auto row = scaled_derivative_row(space, x, order);
      long double s = 0.0L;
      for (std::size_t j = 0; j < dim; ++j) s += c[j] * row[j];
      return s;
    };
    for (int i = 0; i < k; ++i)
      if (std::abs(scaled_value(iv.a, i)) > kZeroOrderRtol * coeff_scale)
        throw NotECT(k, iv.a, "zero of order " + std::to_string(k) + " at a not attained");
    if (std::abs(scaled_value(iv.a, k)) < kExactOrderRtol * coeff_scale)
      throw NotECT(k, iv.a, "zero at a has order exceeding " + std::to_string(k));
    for (int i = 0; i < n - k; ++i)
      if (std::abs(scaled_value(iv.b, i)) > kZeroOrderRtol * coeff_scale)
        throw NotECT(k, iv.b, "zero of order " + std::to_string(n - k) + " at b not attained");
    if (std::abs(scaled_value(iv.b, n - k)) < kExactOrderRtol * coeff_scale)
      throw NotECT(k, iv.b, "zero at b has order exceeding " + std::to_string(n - k));

    basis.coeffs[static_cast<std::size_t>(k)].assign(c.begin(), c.end());
  }
  return basis;
}

std::vector<ElevationPair> elevation_pairs(const BernsteinBasis& lower,
                                           const BernsteinBasis& upper) {
  const int n = lower.degree();
  const Interval& iv = lower.space.interval();
  if (upper.degree() != n + 1)
    throw NotNested("elevation requires spaces of consecutive dimensions");
  if (upper.space.interval().a != iv.a || upper.space.interval().b != iv.b)
    throw NotNested("elevation requires spaces over the same interval");

  // Containment screen: every raw member of the lower space must be
  // reproducible in the upper space to grid tolerance.
  constexpr int kGridSize = 257;
  linalg::Matrix a(kGridSize, upper.space.dimension());
  std::vector<double> xs(kGridSize);
  for (int g = 0; g < kGridSize; ++g) {
    xs[g] = iv.a + iv.length() * g / (kGridSize - 1);
    for (std::size_t j = 0; j < upper.space.dimension(); ++j)
      a(g, j) = upper.space.eval_member(j, xs[g], 0);
  }
  for (std::size_t j = 0; j < lower.space.dimension(); ++j) {
    std::vector<double> y(kGridSize);
    double yscale = 0.0;
    for (int g = 0; g < kGridSize; ++g) {
      y[g] = lower.space.eval_member(j, xs[g], 0);
      yscale = std::max(yscale, std::abs(y[g]));
    }
    const auto fit = linalg::solve_least_squares(a, y);
    double residual = 0.0;
    for (int g = 0; g < kGridSize; ++g) {
      double s = 0.0;
      for (std::size_t c = 0; c < fit.size(); ++c) s += fit[c] * a(g, c);
      residual = std::max(residual, std::abs(s - y[g]));
    }
    if (residual > 1e-8 * std::max(yscale, 1e-300))
      throw NotNested("lower raw basis member " + std::to_string(j) +
                      " is not in the upper space (residual " + std::to_string(residual) + ")");
  }

  std::vector<ElevationPair> pairs(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double at_a = lower.eval(k, iv.a, k) / upper.eval(k, iv.a, k);
    const double at_b = lower.eval(k, iv.b, n - k) / upper.eval(k + 1, iv.b, n - k);
    if (!(at_a > 0.0) || !(at_b > 0.0)) throw NonPositiveElevation(k);
    pairs[static_cast<std::size_t>(k)] = ElevationPair{at_a, at_b};
  }
  return pairs;
}

}  // namespace chebbern
