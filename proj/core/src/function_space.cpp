#include "chebbern/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "chebbern/linalg.hpp"

namespace chebbern {

namespace {

constexpr int kUnboundedOrder = std::numeric_limits<int>::max();

double int_pow(double x, int p) {
  if (p == 0) return 1.0;
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

// m * (m-1) * ... * (m-k+1)
double falling_factorial(int m, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= static_cast<double>(m - i);
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

FunctionDescriptor::FunctionDescriptor(Eval eval, int max_order)
    : eval_(std::move(eval)), max_order_(max_order) {
  if (!eval_) throw DomainError("function descriptor requires an eval callable");
  if (max_order_ < 0) throw DomainError("max_order must be non-negative");
}

double FunctionDescriptor::operator()(double x, int order) const {
  if (order < 0 || order > max_order_)
    throw DomainError("derivative order " + std::to_string(order) + " not available");
  return eval_(x, order);
}

FunctionDescriptor FunctionDescriptor::constant(double value) {
  return FunctionDescriptor([value](double, int order) { return order == 0 ? value : 0.0; },
                            kUnboundedOrder);
}

FunctionDescriptor FunctionDescriptor::monomial(int power) {
  if (power < 0) throw DomainError("monomial power must be non-negative");
  return FunctionDescriptor(
      [power](double x, int order) {
        if (order > power) return 0.0;
        return falling_factorial(power, order) * int_pow(x, power - order);
      },
      kUnboundedOrder);
}

FunctionDescriptor FunctionDescriptor::exp_monomial(int power, double lambda) {
  if (power < 0) throw DomainError("monomial power must be non-negative");
  // Leibniz rule: (x^m e^(lx))^(k) = sum_i C(k,i) m!/(m-i)! x^(m-i) l^(k-i) e^(lx).
  return FunctionDescriptor(
      [power, lambda](double x, int order) {
        const double e = std::exp(lambda * x);
        double sum = 0.0;
        const int top = std::min(order, power);
        for (int i = 0; i <= top; ++i) {
          const double lpow = (order - i == 0) ? 1.0 : int_pow(lambda, order - i);
          sum += binomial(order, i) * falling_factorial(power, i) * int_pow(x, power - i) * lpow;
        }
        return sum * e;
      },
      kUnboundedOrder);
}

FunctionDescriptor FunctionDescriptor::sine() {
  return FunctionDescriptor(
      [](double x, int order) {
        switch (order % 4) {
          case 0: return std::sin(x);
          case 1: return std::cos(x);
          case 2: return -std::sin(x);
          default: return -std::cos(x);
        }
      },
      kUnboundedOrder);
}

FunctionDescriptor FunctionDescriptor::cosine() {
  return FunctionDescriptor(
      [](double x, int order) {
        switch (order % 4) {
          case 0: return std::cos(x);
          case 1: return -std::sin(x);
          case 2: return -std::cos(x);
          default: return std::sin(x);
        }
      },
      kUnboundedOrder);
}

FunctionDescriptor FunctionDescriptor::combination(std::vector<double> coeffs,
                                                   std::vector<FunctionDescriptor> parts) {
  if (coeffs.size() != parts.size() || parts.empty())
    throw DomainError("combination requires matching, non-empty coefficient and part lists");
  int max_order = kUnboundedOrder;
  for (const auto& p : parts) max_order = std::min(max_order, p.max_order());
  return FunctionDescriptor(
      [coeffs = std::move(coeffs), parts = std::move(parts)](double x, int order) {
        double sum = 0.0;
        for (std::size_t i = 0; i < parts.size(); ++i) sum += coeffs[i] * parts[i](x, order);
        return sum;
      },
      max_order);
}

FunctionDescriptor FunctionDescriptor::reflected(FunctionDescriptor f, double c) {
  const int max_order = f.max_order();
  return FunctionDescriptor(
      [f = std::move(f), c](double x, int order) {
        const double v = f(c - x, order);
        return (order % 2 == 0) ? v : -v;
      },
      max_order);
}

int dimension_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("CHEB_BERNSTEIN_MAX_N")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 12;
  }();
  return cap;
}

ChebyshevSpace::ChebyshevSpace(Interval interval, std::vector<FunctionDescriptor> basis,
                               SpaceKind kind)
    : interval_(interval), basis_(std::move(basis)), kind_(kind) {
  if (basis_.empty()) throw DomainError("space requires at least one basis member");
  const int n = degree();
  if (n > dimension_cap())
    throw DomainError("space degree " + std::to_string(n) + " exceeds the cap of " +
                      std::to_string(dimension_cap()) +
                      " (set CHEB_BERNSTEIN_MAX_N to override)");
  for (const auto& f : basis_)
    if (f.max_order() < n)
      throw DomainError("every basis member must provide derivatives up to order n");

  // Independence screen: derivatives 0..n at the midpoint, rows scaled to
  // unit max-norm, must have full rank.
  const double mid = interval_.midpoint();
  const std::size_t dim = basis_.size();
  linalg::Matrix w(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double scale = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      w(i, j) = basis_[j](mid, static_cast<int>(i));
      scale = std::max(scale, std::abs(w(i, j)));
    }
    if (scale == 0.0) throw DomainError("basis members are linearly dependent");
    for (std::size_t j = 0; j < dim; ++j) w(i, j) /= scale;
  }
  if (linalg::rank_full_pivot(w) != dim)
    throw DomainError("basis members are linearly dependent to working tolerance");
}

const FunctionDescriptor& ChebyshevSpace::member(std::size_t j) const {
  if (j >= basis_.size()) throw std::out_of_range("basis member index out of range");
  return basis_[j];
}

double ChebyshevSpace::eval_member(std::size_t j, double x, int order) const {
  return member(j)(x, order);
}

ChebyshevSpace make_polynomial_space(int n, const Interval& interval) {
  if (n < 0) throw DomainError("polynomial degree must be non-negative");
  std::vector<FunctionDescriptor> basis;
  basis.reserve(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) basis.push_back(FunctionDescriptor::monomial(m));
  return ChebyshevSpace(interval, std::move(basis), SpaceKind::polynomial);
}

ChebyshevSpace make_exponential_space(std::vector<double> lambdas, const Interval& interval) {
  if (lambdas.empty()) throw DomainError("exponent list must be non-empty");
  std::sort(lambdas.begin(), lambdas.end());
  std::vector<FunctionDescriptor> basis;
  basis.reserve(lambdas.size());
  std::size_t i = 0;
  while (i < lambdas.size()) {
    std::size_t j = i;
    while (j < lambdas.size() && lambdas[j] == lambdas[i]) ++j;
    for (std::size_t m = 0; m < j - i; ++m)
      basis.push_back(FunctionDescriptor::exp_monomial(static_cast<int>(m), lambdas[i]));
    i = j;
  }
  return ChebyshevSpace(interval, std::move(basis), SpaceKind::exponential);
}

ChebyshevSpace make_trig_space(double b) {
  if (!(b > 0.0) || !(b < 2.0 * std::numbers::pi))
    throw DomainError("trig space requires 0 < b < 2*pi; the space is not extended "
                      "Chebyshev at or beyond 2*pi");
  std::vector<FunctionDescriptor> basis{
      FunctionDescriptor::constant(1.0), FunctionDescriptor::monomial(1),
      FunctionDescriptor::cosine(), FunctionDescriptor::sine()};
  return ChebyshevSpace(Interval(0.0, b), std::move(basis), SpaceKind::trig);
}

HaarPair make_haar_pair(FunctionDescriptor f0, FunctionDescriptor f1, const Interval& interval,
                        int samples) {
  if (samples < 2) throw DomainError("Haar validation needs at least two sample points");
  const double step = interval.length() / (samples - 1);
  double previous_ratio = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = (i + 1 == samples) ? interval.b : interval.a + step * i;
    const double v0 = f0(x, 0);
    if (!(v0 > 0.0)) throw HaarViolation(x, "f0 is not strictly positive");
    const double r = f1(x, 0) / v0;
    if (i > 0 && !(r > previous_ratio))
      throw HaarViolation(x, "f1/f0 is not strictly increasing");
    previous_ratio = r;
  }
  const double lo = f1(interval.a, 0) / f0(interval.a, 0);
  const double hi = f1(interval.b, 0) / f0(interval.b, 0);
  return HaarPair{std::move(f0), std::move(f1), interval, {lo, hi}};
}

EctScreenReport verify_ect_sampled(const ChebyshevSpace& space, int trials, unsigned seed) {
  if (trials < 1) throw DomainError("trials must be positive");
  constexpr int kGridSize = 513;
  const int n = space.degree();
  const Interval& iv = space.interval();

  // Cache basis values on the grid.
  std::vector<std::vector<double>> values(space.dimension(), std::vector<double>(kGridSize));
  std::vector<double> xs(kGridSize);
  for (int g = 0; g < kGridSize; ++g) {
    xs[g] = iv.a + iv.length() * g / (kGridSize - 1);
    for (std::size_t j = 0; j < space.dimension(); ++j)
      values[j][g] = space.eval_member(j, xs[g], 0);
  }

  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  EctScreenReport report;
  report.trials = trials;

  for (int t = 0; t < trials; ++t) {
    std::vector<double> coeffs(space.dimension());
    for (auto& c : coeffs) c = gauss(rng);

    std::vector<double> g(kGridSize, 0.0);
    double vmax = 0.0;
    for (int i = 0; i < kGridSize; ++i) {
      for (std::size_t j = 0; j < space.dimension(); ++j) g[i] += coeffs[j] * values[j][i];
      vmax = std::max(vmax, std::abs(g[i]));
    }
    const double threshold = 1e-12 * vmax;

    int changes = 0;
    int last_sign = 0;
    double excess_at = xs[0];
    for (int i = 0; i < kGridSize; ++i) {
      if (std::abs(g[i]) <= threshold) continue;
      const int s = g[i] > 0.0 ? 1 : -1;
      if (last_sign != 0 && s != last_sign) {
        ++changes;
        if (changes == n + 1) excess_at = xs[i];
      }
      last_sign = s;
    }
    if (changes > n) {
      ++report.violations;
      if (!report.witness_coeffs) {
        report.witness_location = excess_at;
        report.witness_coeffs = coeffs;
      }
    }
  }
  return report;
}

}  // namespace chebbern
