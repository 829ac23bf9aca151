#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "chebbern/errors.hpp"

namespace chebbern {

/// Closed interval [a, b] with a < b.
struct Interval {
  Interval(double a, double b) : a(a), b(b) {
    if (!(a < b)) throw DomainError("interval requires a < b");
  }

  double a;
  double b;

  double length() const { return b - a; }
  double midpoint() const { return 0.5 * (a + b); }
  bool contains(double x) const { return x >= a && x <= b; }
};

/// A scalar function on the ambient interval together with analytically exact
/// derivatives up to max_order. Built-in constructors never fall back to
/// finite differencing; custom functions must supply their own derivative
/// callable.
class FunctionDescriptor {
public:
  using Eval = std::function<double(double x, int order)>;

  FunctionDescriptor(Eval eval, int max_order);

  /// Value of the order-th derivative at x.
  double operator()(double x, int order = 0) const;

  int max_order() const { return max_order_; }

  static FunctionDescriptor constant(double value);
  static FunctionDescriptor monomial(int power);                     // x^power
  static FunctionDescriptor exp_monomial(int power, double lambda);  // x^power * e^(lambda x)
  static FunctionDescriptor sine();
  static FunctionDescriptor cosine();

  /// Linear combination sum_i coeffs[i] * parts[i].
  static FunctionDescriptor combination(std::vector<double> coeffs,
                                        std::vector<FunctionDescriptor> parts);

  /// x -> f(c - x).
  static FunctionDescriptor reflected(FunctionDescriptor f, double c);

private:
  Eval eval_;
  int max_order_;
};

enum class SpaceKind { polynomial, exponential, trig, custom };

/// Default cap on the space degree n (dimension n+1); the endpoint-derivative
/// systems lose double-precision accuracy beyond this. Override with the
/// CHEB_BERNSTEIN_MAX_N environment variable.
int dimension_cap();

/// Ordered basis of an (n+1)-dimensional candidate extended Chebyshev space.
/// Construction checks derivative availability to order n and linear
/// independence of the basis (midpoint derivative matrix nonsingular); the
/// ECT property itself is only screened heuristically, never proven.
class ChebyshevSpace {
public:
  ChebyshevSpace(Interval interval, std::vector<FunctionDescriptor> basis, SpaceKind kind);

  const Interval& interval() const { return interval_; }
  int degree() const { return static_cast<int>(basis_.size()) - 1; }
  std::size_t dimension() const { return basis_.size(); }
  SpaceKind kind() const { return kind_; }

  const FunctionDescriptor& member(std::size_t j) const;
  double eval_member(std::size_t j, double x, int order = 0) const;

private:
  Interval interval_;
  std::vector<FunctionDescriptor> basis_;
  SpaceKind kind_;
};

/// Monomial basis 1, x, ..., x^n.
ChebyshevSpace make_polynomial_space(int n, const Interval& interval);

/// Exponential polynomials with the given (real) exponents, one per entry
/// counting multiplicity. The basis is ordered by ascending distinct exponent,
/// then ascending monomial factor: x^m e^(lambda x), m = 0..mult-1.
ChebyshevSpace make_exponential_space(std::vector<double> lambdas, const Interval& interval);

/// The span of 1, x, cos x, sin x over [0, b]; requires 0 < b < 2*pi.
ChebyshevSpace make_trig_space(double b);

/// A pair (f0, f1) with f0 > 0 and f1/f0 strictly increasing, validated on a
/// uniform sample grid.
struct HaarPair {
  FunctionDescriptor f0;
  FunctionDescriptor f1;
  Interval interval;
  std::pair<double, double> ratio_range;  // f1/f0 at a and at b

  double ratio(double x) const { return f1(x) / f0(x); }
};

HaarPair make_haar_pair(FunctionDescriptor f0, FunctionDescriptor f1, const Interval& interval,
                        int samples = 257);

/// Outcome of the randomized extended-Chebyshev screen: a witness is a random
/// combination with more than n sign changes on a dense grid. Report-only;
/// finding no witness proves nothing.
struct EctScreenReport {
  int trials = 0;
  int violations = 0;
  std::optional<double> witness_location;
  std::optional<std::vector<double>> witness_coeffs;
};

EctScreenReport verify_ect_sampled(const ChebyshevSpace& space, int trials, unsigned seed = 0);

}  // namespace chebbern
