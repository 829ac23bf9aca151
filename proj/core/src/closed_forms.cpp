#include "chebbern/closed_forms.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace chebbern {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

}  // namespace

BernsteinOperator power_fixing_operator(int n, int j) {
  if (j < 1 || j > n) throw DomainError("power-fixing operator requires 1 <= j <= n");
  ChebyshevSpace space = make_polynomial_space(n, Interval(0.0, 1.0));

  // Midpoint-one classical basis: 2^n x^k (1-x)^(n-k), expanded binomially.
  const double two_n = std::pow(2.0, n);
  BernsteinBasis basis{space, {}, Normalization::midpoint_one};
  basis.coeffs.assign(static_cast<std::size_t>(n) + 1,
                      std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0));
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i <= n - k; ++i)
      basis.coeffs[k][k + i] = two_n * binomial(n - k, i) * ((i % 2 == 0) ? 1.0 : -1.0);

  std::vector<double> nodes(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> weights(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    if (k >= j) {
      double ratio = 1.0;
      for (int l = 0; l < j; ++l) ratio *= static_cast<double>(k - l) / static_cast<double>(n - l);
      nodes[k] = std::pow(ratio, 1.0 / j);
    }
    weights[k] = binomial(n, k) / two_n;
  }
  nodes[n] = 1.0;

  return BernsteinOperator{std::move(basis), std::move(nodes), std::move(weights),
                           j == 1 ? NodeOrder::strictly_increasing : NodeOrder::nondecreasing};
}

double rho0() {
  auto f = [](double b) { return std::sin(b) - b * std::cos(b); };
  double lo = std::numbers::pi;  // f(pi) = pi > 0
  double hi = 1.5 * std::numbers::pi;  // f(3pi/2) = -1 < 0
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

TrigCaseResult trig_case(double b) {
  if (!(b > 0.0) || !(b < 2.0 * std::numbers::pi))
    throw DomainError("trig case requires 0 < b < 2*pi");

  TrigCaseResult result;
  result.b = b;

  const double sb = std::sin(b);
  const double cb = std::cos(b);
  const double t1 = (b - sb) / (1.0 - cb);
  double t2 = (sb - b * cb) / (1.0 - cb);  // = b - t1

  const double tol = 1e-9 * b;
  if (t2 < -tol) {
    result.exists = false;
    result.regime = TrigRegime::nonexistent;
    return result;
  }
  if (t2 < 0.0) t2 = 0.0;  // b at rho0 up to root tolerance

  result.exists = true;
  if (t2 - t1 > tol)
    result.regime = TrigRegime::strict_increasing;
  else if (t1 - t2 > tol)
    result.regime = TrigRegime::reversed;
  else
    result.regime = TrigRegime::coalesced;

  // Expansion coefficients of 1 over the unnormalized closed-form basis;
  // with f0 = 1 the operator weights equal them. Rescaling each basis
  // function to value one at b/2 multiplies the matching weight by the old
  // midpoint value.
  const double beta3 = 1.0 / (b - sb);
  const double beta2 = -((1.0 - cb) / (b - sb)) / (b * sb - 2.0 + 2.0 * cb);
  const double h = 0.5 * b;
  const double p3_mid = h - std::sin(h);
  const double p2_mid = (b - sb) * (1.0 - std::cos(h)) - (1.0 - cb) * p3_mid;

  result.nodes = std::array<double, 4>{0.0, t1, t2, b};
  const double w_end = beta3 * p3_mid;
  const double w_int = beta2 * p2_mid;
  result.weights = std::array<double, 4>{w_end, w_int, w_int, w_end};
  return result;
}

std::array<FunctionDescriptor, 4> trig_basis_closed(double b) {
  if (!(b > 0.0) || !(b < 2.0 * std::numbers::pi))
    throw DomainError("trig basis requires 0 < b < 2*pi");
  const double sb = std::sin(b);
  const double cb = std::cos(b);

  FunctionDescriptor p3 = FunctionDescriptor::combination(
      {1.0, -1.0}, {FunctionDescriptor::monomial(1), FunctionDescriptor::sine()});
  // (b - sin b)(1 - cos x) - (1 - cos b)(x - sin x)
  FunctionDescriptor p2 = FunctionDescriptor::combination(
      {b - sb, -(b - sb), -(1.0 - cb), 1.0 - cb},
      {FunctionDescriptor::constant(1.0), FunctionDescriptor::cosine(),
       FunctionDescriptor::monomial(1), FunctionDescriptor::sine()});
  FunctionDescriptor p1 = FunctionDescriptor::reflected(p2, b);
  FunctionDescriptor p0 = FunctionDescriptor::reflected(p3, b);
  return {std::move(p0), std::move(p1), std::move(p2), std::move(p3)};
}

TrigCounterexampleReport trig_counterexample(double b) {
  const double limit = rho0();
  if (!(b > std::numbers::pi) || b > limit + 1e-9)
    throw DomainError("counterexample requires pi < b <= rho0");

  const TrigCaseResult closed = trig_case(std::min(b, limit));
  TrigCounterexampleReport report;
  report.b = b;
  report.t1 = (*closed.nodes)[1];
  report.t2 = (*closed.nodes)[2];

  const auto basis = trig_basis_closed(b);
  report.curvature_at_zero = basis[0](0.0, 2) + basis[3](0.0, 2);

  // Apply the closed-form operator to f(x) = (x - t1)(x - t2) and classify.
  const double t1 = report.t1, t2 = report.t2;
  auto f = [t1, t2](double x) { return (x - t1) * (x - t2); };
  const auto& nodes = *closed.nodes;
  const auto& weights = *closed.weights;
  const std::array<double, 4> mids{basis[0](0.5 * b, 0), basis[1](0.5 * b, 0),
                                   basis[2](0.5 * b, 0), basis[3](0.5 * b, 0)};
  auto bf = [&](double x) {
    double s = 0.0;
    for (int k = 0; k < 4; ++k) s += f(nodes[k]) * weights[k] * (basis[k](x, 0) / mids[k]);
    return s;
  };
  HaarPair pair = make_haar_pair(FunctionDescriptor::constant(1.0),
                                 FunctionDescriptor::monomial(1), Interval(0.0, b));
  report.verdict = is_convex_sampled(pair, bf, 129).verdict;
  return report;
}

}  // namespace chebbern
