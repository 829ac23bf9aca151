#include "chebbern/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace chebbern {

namespace {

constexpr long kTripleCap = 100000;
constexpr double kDetRtol = 1e-10;

double det3_values(const std::array<double, 3>& r0, const std::array<double, 3>& r1,
                   const std::array<double, 3>& r2) {
  return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
         r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
}

double row_max(const std::array<double, 3>& r) {
  return std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])});
}

std::vector<double> uniform_grid(const Interval& iv, int size) {
  std::vector<double> xs(size);
  for (int g = 0; g < size; ++g) xs[g] = iv.a + iv.length() * g / (size - 1);
  xs.back() = iv.b;
  return xs;
}

}  // namespace

double det3(const HaarPair& pair, const std::function<double(double)>& f, double x0, double x1,
            double x2) {
  if (!(x0 < x1 && x1 < x2))
    throw DomainError("det3 requires strictly ordered points x0 < x1 < x2");
  return det3_values({pair.f0(x0, 0), pair.f0(x1, 0), pair.f0(x2, 0)},
                     {pair.f1(x0, 0), pair.f1(x1, 0), pair.f1(x2, 0)},
                     {f(x0), f(x1), f(x2)});
}

ConvexityReport is_convex_sampled(const HaarPair& pair, const std::function<double(double)>& f,
                                  int grid_size, unsigned seed) {
  if (grid_size < 3) throw DomainError("convexity sampling needs a grid of at least 3 points");
  const auto xs = uniform_grid(pair.interval, grid_size);
  std::vector<double> v0(xs.size()), v1(xs.size()), vf(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    v0[i] = pair.f0(xs[i], 0);
    v1[i] = pair.f1(xs[i], 0);
    vf[i] = f(xs[i]);
  }

  ConvexityReport report;
  bool has_positive = false, has_negative = false;
  double min_normalized = 0.0;
  bool first = true;

  auto check_triple = [&](int i, int j, int k) {
    const std::array<double, 3> r0{v0[i], v0[j], v0[k]};
    const std::array<double, 3> r1{v1[i], v1[j], v1[k]};
    const std::array<double, 3> r2{vf[i], vf[j], vf[k]};
    const double det = det3_values(r0, r1, r2);
    const double scale = std::max(row_max(r0) * row_max(r1) * row_max(r2), 1e-300);
    const double normalized = det / scale;
    if (first || normalized < min_normalized) {
      min_normalized = normalized;
      if (normalized < -kDetRtol) report.witness = std::array<double, 3>{xs[i], xs[j], xs[k]};
    }
    first = false;
    if (normalized > kDetRtol) has_positive = true;
    if (normalized < -kDetRtol) has_negative = true;
    ++report.triples_checked;
  };

  const long g = grid_size;
  const long total = g * (g - 1) * (g - 2) / 6;
  if (total <= kTripleCap) {
    for (int i = 0; i < grid_size; ++i)
      for (int j = i + 1; j < grid_size; ++j)
        for (int k = j + 1; k < grid_size; ++k) check_triple(i, j, k);
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, grid_size - 1);
    for (long t = 0; t < kTripleCap; ++t) {
      int i = pick(rng), j = pick(rng), k = pick(rng);
      if (i == j || j == k || i == k) continue;
      if (i > j) std::swap(i, j);
      if (j > k) std::swap(j, k);
      if (i > j) std::swap(i, j);
      check_triple(i, j, k);
    }
  }

  report.min_det = min_normalized;
  if (!has_positive && !has_negative)
    report.verdict = ConvexityVerdict::affine;
  else if (!has_negative)
    report.verdict = ConvexityVerdict::convex;
  else if (!has_positive)
    report.verdict = ConvexityVerdict::concave;
  else
    report.verdict = ConvexityVerdict::neither;
  return report;
}

FunctionDescriptor chord_interpolant(const HaarPair& pair, const std::function<double(double)>& f,
                                     double x0, double x2) {
  if (!(x0 < x2)) throw DomainError("chord requires x0 < x2");
  const double a00 = pair.f0(x0, 0), a01 = pair.f1(x0, 0);
  const double a10 = pair.f0(x2, 0), a11 = pair.f1(x2, 0);
  const double det = a00 * a11 - a01 * a10;
  const double scale = std::max({std::abs(a00 * a11), std::abs(a01 * a10), 1e-300});
  if (std::abs(det) <= 1e-14 * scale)
    throw SingularSystem("chord system is singular; the pair is not a Haar pair here");
  const double y0 = f(x0), y2 = f(x2);
  const double c0 = (y0 * a11 - y2 * a01) / det;
  const double c1 = (y2 * a00 - y0 * a10) / det;
  return FunctionDescriptor::combination({c0, c1}, {pair.f0, pair.f1});
}

std::function<double(double)> convexity_transform(const HaarPair& pair,
                                             const std::function<double(double)>& f) {
  return [pair, f](double u) {
    const double x = invert_ratio(pair, u);
    return f(x) / pair.f0(x, 0);
  };
}

MajorizationReport verify_majorization(const BernsteinOperator& op,
                                       const std::function<double(double)>& f, int grid) {
  if (grid < 2) throw DomainError("majorization grid needs at least 2 points");
  const auto xs = uniform_grid(op.basis.space.interval(), grid);
  std::vector<double> f_at_nodes(op.nodes.size());
  for (std::size_t k = 0; k < op.nodes.size(); ++k) f_at_nodes[k] = f(op.nodes[k]);

  MajorizationReport report;
  bool first = true;
  for (double x : xs) {
    double bf = 0.0;
    for (std::size_t k = 0; k < op.nodes.size(); ++k)
      bf += f_at_nodes[k] * op.weights[k] * op.basis.eval(k, x, 0);
    const double diff = bf - f(x);
    if (first || diff < report.min_difference) {
      report.min_difference = diff;
      report.argmin = x;
      first = false;
    }
  }
  return report;
}

AramaDecomposition arama_decomposition(const BernsteinOperator& op_n,
                                       const BernsteinOperator& op_n1,
                                       const std::function<double(double)>& f) {
  const int n = op_n.degree();
  if (op_n1.degree() != n + 1)
    throw MismatchedLevels("decomposition requires operators of consecutive levels");
  const Interval& iv = op_n.basis.space.interval();
  if (op_n1.basis.space.interval().a != iv.a || op_n1.basis.space.interval().b != iv.b)
    throw MismatchedLevels("decomposition requires operators over the same interval");

  const auto pairs = elevation_pairs(op_n.basis, op_n1.basis);

  AramaDecomposition result;
  result.g_values.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    result.g_values[k - 1] = f(op_n.nodes[k]) * op_n.weights[k] * pairs[k].at_a -
                             f(op_n1.nodes[k]) * op_n1.weights[k] +
                             f(op_n.nodes[k - 1]) * op_n.weights[k - 1] * pairs[k - 1].at_b;
  }

  const auto xs = uniform_grid(iv, 257);
  for (double x : xs) {
    double lhs = apply_operator(op_n, f, x) - apply_operator(op_n1, f, x);
    for (int k = 1; k <= n; ++k) lhs -= result.g_values[k - 1] * op_n1.basis.eval(k, x, 0);
    result.residual = std::max(result.residual, std::abs(lhs));
  }
  return result;
}

ConvexityReport verify_convexity_preservation(const BernsteinOperator& op, const HaarPair& pair,
                                              const std::function<double(double)>& f, int grid,
                                              bool force) {
  if (op.node_order == NodeOrder::nonmonotone && !force)
    throw HypothesisViolation(
        "convexity preservation assumes increasing nodes; pass force to run anyway");
  auto bf = [&op, &f](double x) { return apply_operator(op, f, x); };
  return is_convex_sampled(pair, bf, grid);
}

MonotoneVerdict is_g_monotone_sampled(const FunctionDescriptor& g,
                                      const std::function<double(double)>& f,
                                      const Interval& interval, int grid) {
  if (grid < 2) throw DomainError("monotonicity sampling needs at least 2 points");
  const auto xs = uniform_grid(interval, grid);
  std::vector<double> vg(xs.size()), vf(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vg[i] = g(xs[i], 0);
    if (!(vg[i] > 0.0)) throw NonPositiveG(xs[i]);
    vf[i] = f(xs[i]);
  }
  bool has_positive = false, has_negative = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const double det = vg[i] * vf[j] - vg[j] * vf[i];
      const double scale = std::max({std::abs(vg[i] * vf[j]), std::abs(vg[j] * vf[i]), 1e-300});
      if (det > kDetRtol * scale) has_positive = true;
      if (det < -kDetRtol * scale) has_negative = true;
    }
  }
  if (!has_negative) return MonotoneVerdict::g_increasing;
  if (!has_positive) return MonotoneVerdict::g_decreasing;
  return MonotoneVerdict::neither;
}

SignConsistencyReport sign_consistency_sampled(const BernsteinBasis& basis, int order,
                                               long trials, unsigned seed) {
  if (order != 2 && order != 3) throw DomainError("sign consistency supports orders 2 and 3");
  if (trials < 1) throw DomainError("trials must be positive");
  const int n = basis.degree();
  SignConsistencyReport report;
  report.order = order;
  if (n + 1 < order) return report;  // not enough basis functions to form a minor

  const Interval& iv = basis.space.interval();
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> point(iv.a, iv.b);
  std::uniform_int_distribution<int> index(0, n);
  const double min_sep = 1e-9 * iv.length();

  bool first = true;
  for (long t = 0; t < trials; ++t) {
    std::vector<double> xs(order);
    do {
      for (auto& x : xs) x = point(rng);
      std::sort(xs.begin(), xs.end());
    } while ([&] {
      for (int i = 0; i + 1 < order; ++i)
        if (xs[i + 1] - xs[i] < min_sep) return true;
      return false;
    }());

    std::vector<int> ks(order);
    do {
      for (auto& k : ks) k = index(rng);
      std::sort(ks.begin(), ks.end());
    } while (std::adjacent_find(ks.begin(), ks.end()) != ks.end());

    double det, scale;
    if (order == 2) {
      const double a = basis.eval(ks[0], xs[0]), b = basis.eval(ks[1], xs[0]);
      const double c = basis.eval(ks[0], xs[1]), d = basis.eval(ks[1], xs[1]);
      det = a * d - b * c;
      scale = std::max(std::abs(a), std::abs(b)) * std::max(std::abs(c), std::abs(d));
    } else {
      std::array<double, 3> r0, r1, r2;
      for (int j = 0; j < 3; ++j) {
        r0[j] = basis.eval(ks[j], xs[0]);
        r1[j] = basis.eval(ks[j], xs[1]);
        r2[j] = basis.eval(ks[j], xs[2]);
      }
      det = det3_values(r0, r1, r2);
      scale = row_max(r0) * row_max(r1) * row_max(r2);
    }
    const double normalized = det / std::max(scale, 1e-300);
    if (first || normalized < report.min_det_normalized) {
      report.min_det = det;
      report.min_det_normalized = normalized;
      report.witness_points = xs;
      report.witness_indices = ks;
      first = false;
    }
    ++report.trials;
  }
  return report;
}

}  // namespace chebbern
