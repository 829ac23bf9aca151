#pragma once

#include <vector>

#include "chebbern/function_space.hpp"

namespace chebbern {

enum class Normalization { midpoint_one };

/// Bernstein basis of a space: row k of coeffs holds the coordinates of the
/// basis function with a zero of exact order k at a and exact order n-k at b,
/// expressed in the space's raw basis and scaled to value 1 at the midpoint.
struct BernsteinBasis {
  ChebyshevSpace space;
  std::vector<std::vector<double>> coeffs;
  Normalization normalization = Normalization::midpoint_one;

  int degree() const { return space.degree(); }

  /// order-th derivative of basis function k at x.
  double eval(std::size_t k, double x, int order = 0) const;
};

/// Solves the endpoint zero-multiplicity systems for each k and verifies
/// exact zero orders and interior positivity. Throws DegenerateSpace if a
/// constraint matrix is rank deficient and NotECT if a candidate changes sign
/// on the interior grid or misses an exact-order condition.
BernsteinBasis build_bernstein_basis(const ChebyshevSpace& space);

double eval_basis(const BernsteinBasis& basis, std::size_t k, double x, int order = 0);

/// Coefficients of the two-term degree-elevation identity: basis function k
/// at level n equals at_a * (function k at level n+1) + at_b * (function k+1
/// at level n+1). Both are positive for non-negative bases.
struct ElevationPair {
  double at_a = 0.0;
  double at_b = 0.0;
};

/// Elevation coefficients for every k between a basis and the basis of a
/// space one dimension larger that contains it. Containment is checked by
/// least-squares residual on a grid.
std::vector<ElevationPair> elevation_pairs(const BernsteinBasis& lower,
                                           const BernsteinBasis& upper);

}  // namespace chebbern
