#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "chebbern/operator.hpp"

namespace chebbern {

enum class ConvexityVerdict { convex, concave, neither, affine };

/// Sampled-determinant evidence for (f0,f1)-convexity of a function.
/// min_det is the smallest determinant over the checked triples, normalized
/// by the per-triple entry scale; the witness is the triple attaining it when
/// a negative determinant was found.
struct ConvexityReport {
  ConvexityVerdict verdict = ConvexityVerdict::affine;
  double min_det = 0.0;
  std::optional<std::array<double, 3>> witness;
  long triples_checked = 0;
};

/// The 3x3 determinant with rows f0, f1, f evaluated at x0 < x1 < x2.
/// Non-negative for every ordered triple exactly when f is (f0,f1)-convex.
double det3(const HaarPair& pair, const std::function<double(double)>& f, double x0, double x1,
            double x2);

/// Classifies f by sweeping det3 over ordered triples from a uniform grid;
/// above 100000 triples a deterministic seeded subsample is used.
ConvexityReport is_convex_sampled(const HaarPair& pair, const std::function<double(double)>& f,
                                  int grid_size, unsigned seed = 0);

/// The unique combination of f0 and f1 interpolating f at x0 and x2. The 2x2
/// system is nonsingular because f1/f0 is strictly increasing.
FunctionDescriptor chord_interpolant(const HaarPair& pair, const std::function<double(double)>& f,
                                     double x0, double x2);

/// u -> (f/f0)((f1/f0)^{-1}(u)) on the ratio range; (f0,f1)-convexity of f is
/// equivalent to ordinary convexity of this transform.
std::function<double(double)> convexity_transform(const HaarPair& pair,
                                             const std::function<double(double)>& f);

struct MajorizationReport {
  double min_difference = 0.0;  // min over the grid of B f - f
  double argmin = 0.0;
};

MajorizationReport verify_majorization(const BernsteinOperator& op,
                                       const std::function<double(double)>& f, int grid);

/// Three-term functionals G_k expanding B_n f - B_{n+1} f over the level
/// n+1 basis; each G_k annihilates the span of (f0, f1), and every G_k is
/// non-negative for (f0,f1)-convex f when the nodes interlace strictly.
struct AramaDecomposition {
  std::vector<double> g_values;  // G_1 .. G_n
  double residual = 0.0;         // max grid deviation of the identity
};

AramaDecomposition arama_decomposition(const BernsteinOperator& op_n,
                                       const BernsteinOperator& op_n1,
                                       const std::function<double(double)>& f);

/// Convexity verdict of x -> B f(x). The preservation theorem assumes
/// increasing nodes; pass force = true to run on a nonmonotone-node operator
/// anyway (counterexample studies), otherwise HypothesisViolation is thrown.
ConvexityReport verify_convexity_preservation(const BernsteinOperator& op, const HaarPair& pair,
                                              const std::function<double(double)>& f, int grid,
                                              bool force = false);

enum class MonotoneVerdict { g_increasing, g_decreasing, neither };

/// Checks the sign of the 2x2 determinants [g(x0) g(x1); f(x0) f(x1)] over
/// all ordered grid pairs; g must be positive on the grid.
MonotoneVerdict is_g_monotone_sampled(const FunctionDescriptor& g,
                                      const std::function<double(double)>& f,
                                      const Interval& interval, int grid);

/// Minimum m x m minor of the kernel K(x, k) = p_k(x) over `trials` random
/// ordered point/index tuples. Non-negative (to tolerance) for the basis of
/// an extended Chebyshev space.
struct SignConsistencyReport {
  int order = 0;
  long trials = 0;
  double min_det = 0.0;
  double min_det_normalized = 0.0;
  std::optional<std::vector<double>> witness_points;
  std::optional<std::vector<int>> witness_indices;
};

SignConsistencyReport sign_consistency_sampled(const BernsteinBasis& basis, int order,
                                               long trials, unsigned seed = 0);

}  // namespace chebbern
