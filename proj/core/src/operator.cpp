#include "chebbern/operator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chebbern/linalg.hpp"

namespace chebbern {

namespace {

constexpr int kVerifyGridSize = 257;
constexpr double kFixingRtol = 1e-8;
constexpr double kSpanRtol = 1e-7;
constexpr double kNestingRtol = 1e-8;
constexpr double kStrictGapRtol = 1e-10;
constexpr double kMonotoneSlackRtol = 1e-12;

std::vector<double> uniform_grid(const Interval& iv, int size) {
  std::vector<double> xs(size);
  for (int g = 0; g < size; ++g) xs[g] = iv.a + iv.length() * g / (size - 1);
  xs.back() = iv.b;
  return xs;
}

double reconstruction_residual(const BernsteinBasis& basis, const std::vector<double>& coords,
                               const FunctionDescriptor& f, double& f_scale) {
  const auto xs = uniform_grid(basis.space.interval(), kVerifyGridSize);
  double residual = 0.0;
  f_scale = 0.0;
  for (double x : xs) {
    double s = 0.0;
    for (std::size_t k = 0; k < coords.size(); ++k) s += coords[k] * basis.eval(k, x, 0);
    const double fx = f(x, 0);
    f_scale = std::max(f_scale, std::abs(fx));
    residual = std::max(residual, std::abs(s - fx));
  }
  return residual;
}

NodeOrder classify_nodes(const std::vector<double>& nodes, double length) {
  bool strict = true;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double gap = nodes[k + 1] - nodes[k];
    if (gap < -kMonotoneSlackRtol * length) return NodeOrder::nonmonotone;
    if (gap <= kStrictGapRtol * length) strict = false;
  }
  return strict ? NodeOrder::strictly_increasing : NodeOrder::nondecreasing;
}

void verify_fixing(const BernsteinOperator& op, const HaarPair& pair) {
  const auto xs = uniform_grid(op.basis.space.interval(), kVerifyGridSize);
  for (const FunctionDescriptor* f : {&pair.f0, &pair.f1}) {
    std::vector<double> at_nodes(op.nodes.size());
    for (std::size_t k = 0; k < op.nodes.size(); ++k) at_nodes[k] = (*f)(op.nodes[k], 0);
    double residual = 0.0, scale = 0.0;
    for (double x : xs) {
      double s = 0.0;
      for (std::size_t k = 0; k < op.nodes.size(); ++k)
        s += at_nodes[k] * op.weights[k] * op.basis.eval(k, x, 0);
      const double fx = (*f)(x, 0);
      scale = std::max(scale, std::abs(fx));
      residual = std::max(residual, std::abs(s - fx));
    }
    if (residual > kFixingRtol * std::max(scale, 1e-300)) throw FixingResidual(residual);
  }
}

// Max residual of the best grid least-squares fit of f by the space members,
// relative to the scale of f.
double containment_residual(const ChebyshevSpace& space, const FunctionDescriptor& f) {
  const auto xs = uniform_grid(space.interval(), kVerifyGridSize);
  linalg::Matrix a(xs.size(), space.dimension());
  std::vector<double> y(xs.size());
  double scale = 0.0;
  for (std::size_t g = 0; g < xs.size(); ++g) {
    for (std::size_t j = 0; j < space.dimension(); ++j) a(g, j) = space.eval_member(j, xs[g], 0);
    y[g] = f(xs[g], 0);
    scale = std::max(scale, std::abs(y[g]));
  }
  const auto fit = linalg::solve_least_squares(a, y);
  double residual = 0.0;
  for (std::size_t g = 0; g < xs.size(); ++g) {
    double s = 0.0;
    for (std::size_t j = 0; j < fit.size(); ++j) s += fit[j] * a(g, j);
    residual = std::max(residual, std::abs(s - y[g]));
  }
  return residual / std::max(scale, 1e-300);
}

}  // namespace

std::vector<double> expand_in_basis(const BernsteinBasis& basis, const FunctionDescriptor& f) {
  const int n = basis.degree();
  const double a = basis.space.interval().a;
  if (f.max_order() < n)
    throw DomainError("expansion requires derivatives of f up to order n at a");

  // The matrix p_k^(i)(a) is triangular: p_k has a zero of exact order k at
  // a. Forward substitution, with every row scaled to its own max-norm.
  std::vector<double> coords(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    std::vector<double> row(static_cast<std::size_t>(i) + 1);
    double scale = 0.0;
    for (int k = 0; k <= i; ++k) {
      row[k] = basis.eval(k, a, i);
      scale = std::max(scale, std::abs(row[k]));
    }
    if (scale == 0.0 || std::abs(row[i]) == 0.0)
      throw SingularSystem("expansion matrix has a vanishing diagonal entry");
    double s = f(a, i) / scale;
    for (int k = 0; k < i; ++k) s -= (row[k] / scale) * coords[k];
    coords[i] = s / (row[i] / scale);
  }

  double f_scale = 0.0;
  const double residual = reconstruction_residual(basis, coords, f, f_scale);
  if (residual > kSpanRtol * std::max(f_scale, 1e-300)) throw NotInSpan(residual);
  return coords;
}

double invert_ratio(const HaarPair& pair, double r) {
  const double lo = pair.ratio_range.first;
  const double hi = pair.ratio_range.second;
  const double eps = 1e-12 * (hi - lo);
  if (r < lo - eps || r > hi + eps) throw RatioOutOfRange(r);
  if (r <= lo) return pair.interval.a;
  if (r >= hi) return pair.interval.b;

  double a = pair.interval.a;
  double b = pair.interval.b;
  const double width_tol = 1e-14 * pair.interval.length();
  for (int iter = 0; iter < 200 && (b - a) > width_tol; ++iter) {
    const double m = 0.5 * (a + b);
    if (pair.ratio(m) < r)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

BernsteinOperator build_operator(const BernsteinBasis& basis, const HaarPair& pair) {
  const int n = basis.degree();
  ExpansionCoeffs coeffs{expand_in_basis(basis, pair.f0), expand_in_basis(basis, pair.f1)};

  std::vector<double> nodes(static_cast<std::size_t>(n) + 1);
  std::vector<double> weights(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double beta = coeffs.beta[k];
    const double gamma = coeffs.gamma[k];
    if (!(beta > 0.0))
      throw Nonexistence(k, gamma / beta, "expansion coefficient of f0 is not positive");
    // The endpoint nodes are forced analytically; solving for them would
    // just invert the ratio at a point where it is exactly attained.
    if (k == 0) {
      nodes[k] = pair.interval.a;
    } else if (k == n) {
      nodes[k] = pair.interval.b;
    } else {
      try {
        nodes[k] = invert_ratio(pair, gamma / beta);
      } catch (const RatioOutOfRange&) {
        throw Nonexistence(k, gamma / beta, "node falls outside [a,b]");
      }
    }
    weights[k] = beta / pair.f0(nodes[k], 0);
  }

  BernsteinOperator op{basis, std::move(nodes), std::move(weights),
                       NodeOrder::strictly_increasing};
  op.node_order = classify_nodes(op.nodes, pair.interval.length());
  verify_fixing(op, pair);
  return op;
}

double apply_operator(const BernsteinOperator& op, const std::function<double(double)>& f,
                      double x) {
  const Interval& iv = op.basis.space.interval();
  if (!iv.contains(x)) throw DomainError("evaluation point outside [a,b]");
  double s = 0.0;
  for (std::size_t k = 0; k < op.nodes.size(); ++k)
    s += f(op.nodes[k]) * op.weights[k] * op.basis.eval(k, x, 0);
  return s;
}

double apply_operator(const BernsteinOperator& op, const FunctionDescriptor& f, double x) {
  return apply_operator(op, [&f](double t) { return f(t, 0); }, x);
}

std::vector<double> elevate_expansion(const std::vector<double>& lower_coeffs,
                                      const std::vector<ElevationPair>& pairs) {
  if (lower_coeffs.empty() || pairs.size() != lower_coeffs.size())
    throw DomainError("elevation requires one pair per lower coefficient");
  const std::size_t n = lower_coeffs.size();
  std::vector<double> out(n + 1, 0.0);
  out[0] = lower_coeffs[0] * pairs[0].at_a;
  for (std::size_t k = 1; k < n; ++k)
    out[k] = lower_coeffs[k] * pairs[k].at_a + lower_coeffs[k - 1] * pairs[k - 1].at_b;
  out[n] = lower_coeffs[n - 1] * pairs[n - 1].at_b;
  return out;
}

OperatorChain build_chain(const std::vector<ChebyshevSpace>& spaces, const HaarPair& pair) {
  if (spaces.empty()) throw std::invalid_argument("chain requires at least one space");
  if (spaces.front().dimension() != 2)
    throw std::invalid_argument("chain must start with a space of dimension 2");
  for (std::size_t i = 0; i + 1 < spaces.size(); ++i) {
    if (spaces[i + 1].dimension() != spaces[i].dimension() + 1)
      throw std::invalid_argument("chain spaces must grow by one dimension per level");
    for (std::size_t j = 0; j < spaces[i].dimension(); ++j)
      if (containment_residual(spaces[i + 1], spaces[i].member(j)) > kNestingRtol)
        throw NotNested("chain space " + std::to_string(i) +
                        " is not contained in its successor");
  }
  if (containment_residual(spaces.front(), pair.f0) > kNestingRtol ||
      containment_residual(spaces.front(), pair.f1) > kNestingRtol)
    throw NotNested("the fixed pair does not lie in the first chain space");

  OperatorChain chain{{}, pair};
  chain.operators.reserve(spaces.size());

  // Level one is pinned: both nodes are endpoints and the weights are the
  // reciprocal endpoint values.
  {
    BernsteinBasis b1 = build_bernstein_basis(spaces.front());
    const Interval& iv = spaces.front().interval();
    std::vector<double> nodes{iv.a, iv.b};
    std::vector<double> weights{1.0 / b1.eval(0, iv.a, 0), 1.0 / b1.eval(1, iv.b, 0)};
    BernsteinOperator op{std::move(b1), std::move(nodes), std::move(weights),
                         NodeOrder::strictly_increasing};
    verify_fixing(op, pair);
    chain.operators.push_back(std::move(op));
  }

  const double gap_tol = kStrictGapRtol * pair.interval.length();
  for (std::size_t level = 1; level < spaces.size(); ++level) {
    BernsteinOperator op = build_operator(build_bernstein_basis(spaces[level]), pair);
    const auto& prev = chain.operators.back().nodes;
    const auto& cur = op.nodes;
    for (std::size_t k = 1; k + 1 < cur.size(); ++k) {
      if (!(cur[k] - prev[k - 1] > gap_tol) || !(prev[k] - cur[k] > gap_tol))
        throw InterlacingViolation(static_cast<int>(cur.size()) - 1, static_cast<int>(k));
    }
    chain.operators.push_back(std::move(op));
  }
  return chain;
}

}  // namespace chebbern
