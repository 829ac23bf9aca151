#pragma once

#include <array>
#include <optional>

#include "chebbern/convexity.hpp"
#include "chebbern/operator.hpp"

namespace chebbern {

/// Reference constructions with hard-coded formulas, independent of the
/// general solve pipeline, for cross-validation.

/// The operator on polynomials over [0,1] fixing 1 and x^j. Nodes are
/// t_k = (k(k-1)...(k-j+1) / (n(n-1)...(n-j+1)))^(1/j) for k >= j and 0
/// below; basis and weights come from explicit binomial formulas (scaled to
/// the midpoint-one normalization).
BernsteinOperator power_fixing_operator(int n, int j);

/// First positive root of b -> sin b - b cos b, about 4.4934. Beyond it no
/// operator fixing (1, x) exists on <1, x, cos, sin> over [0, b].
double rho0();

enum class TrigRegime { strict_increasing, coalesced, reversed, nonexistent };

/// Closed-form node/weight case analysis for <1, x, cos x, sin x> on [0, b]
/// with the pair (1, x). Nodes and weights are present exactly when the
/// operator exists (b <= rho0 up to root tolerance); weights are reported in
/// the midpoint-one basis normalization.
struct TrigCaseResult {
  double b = 0.0;
  bool exists = false;
  TrigRegime regime = TrigRegime::nonexistent;
  std::optional<std::array<double, 4>> nodes;
  std::optional<std::array<double, 4>> weights;
};

TrigCaseResult trig_case(double b);

/// The four explicit basis functions for <1, x, cos x, sin x> on [0, b],
/// unnormalized: index 3 is x - sin x, index 2 is
/// (b - sin b)(1 - cos x) - (1 - cos b)(x - sin x), and indices 1, 0 are
/// their reflections about b/2.
std::array<FunctionDescriptor, 4> trig_basis_closed(double b);

/// The convexity counterexample for b in (pi, rho0]: the convex parabola
/// with roots at the two interior nodes maps to a multiple of
/// p_0 + p_3, whose second derivative at 0 equals sin b < 0.
struct TrigCounterexampleReport {
  double b = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
  double curvature_at_zero = 0.0;  // analytic (p_0 + p_3)''(0), equals sin b
  ConvexityVerdict verdict = ConvexityVerdict::neither;
};

TrigCounterexampleReport trig_counterexample(double b);

}  // namespace chebbern
