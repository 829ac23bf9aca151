#pragma once

#include <functional>
#include <vector>

#include "chebbern/bernstein_basis.hpp"
#include "chebbern/function_space.hpp"

namespace chebbern {

/// Coordinates of the fixed pair in a Bernstein basis: beta for f0, gamma for
/// f1. When the operator exists every beta entry is strictly positive.
struct ExpansionCoeffs {
  std::vector<double> beta;
  std::vector<double> gamma;
};

enum class NodeOrder { strictly_increasing, nondecreasing, nonmonotone };

/// Generalized Bernstein operator B f = sum_k f(nodes[k]) * weights[k] * p_k.
/// Nodes always satisfy nodes.front() == a and nodes.back() == b; weights are
/// strictly positive. Immutable once built.
struct BernsteinOperator {
  BernsteinBasis basis;
  std::vector<double> nodes;
  std::vector<double> weights;
  NodeOrder node_order = NodeOrder::strictly_increasing;

  int degree() const { return basis.degree(); }
};

/// Coordinates of f in the Bernstein basis, from the triangular system of
/// derivatives 0..n at the left endpoint. Throws NotInSpan if the grid
/// reconstruction residual exceeds 1e-7 times the scale of f.
std::vector<double> expand_in_basis(const BernsteinBasis& basis, const FunctionDescriptor& f);

/// Inverse of the strictly increasing ratio f1/f0, by bisection. Values
/// within 1e-12 * range-span outside the range clamp to the endpoint; beyond
/// that, throws RatioOutOfRange (the operator nonexistence signal).
double invert_ratio(const HaarPair& pair, double r);

/// Nodes and weights of the unique Bernstein operator fixing the pair, if it
/// exists. Throws Nonexistence when some beta is non-positive or a node falls
/// outside [a,b]; FixingResidual if the verification grid check fails.
BernsteinOperator build_operator(const BernsteinBasis& basis, const HaarPair& pair);

double apply_operator(const BernsteinOperator& op, const std::function<double(double)>& f,
                      double x);
double apply_operator(const BernsteinOperator& op, const FunctionDescriptor& f, double x);

/// Pushes expansion coordinates one level up through the two-term elevation
/// identity: out[k] = lower[k] * at_a[k] + lower[k-1] * at_b[k-1].
std::vector<double> elevate_expansion(const std::vector<double>& lower_coeffs,
                                      const std::vector<ElevationPair>& pairs);

/// Operators for a nested chain of spaces, starting at dimension 2. Nodes of
/// consecutive levels interlace strictly.
struct OperatorChain {
  std::vector<BernsteinOperator> operators;
  HaarPair pair;
};

OperatorChain build_chain(const std::vector<ChebyshevSpace>& spaces, const HaarPair& pair);

}  // namespace chebbern
