#pragma once

#include <stdexcept>
#include <string>

namespace chebbern {

/// Base class for all chebbern errors.
class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument domain (interval bounds, trig length, evaluation point...).
class DomainError : public Error {
  using Error::Error;
};

/// The candidate pair failed positivity or strict ratio increase at a sample.
class HaarViolation : public Error {
public:
  HaarViolation(double point, std::string reason)
      : Error("Haar pair violation at x=" + std::to_string(point) + ": " + reason),
        point(point),
        reason(std::move(reason)) {}

  double point;
  std::string reason;
};

/// Endpoint constraint system for basis function k has a kernel of dimension > 1.
class DegenerateSpace : public Error {
public:
  explicit DegenerateSpace(int index)
      : Error("degenerate space: constraint matrix for basis index " +
              std::to_string(index) + " is rank deficient"),
        index(index) {}

  int index;
};

/// A candidate basis function changed sign or missed its exact zero order;
/// the space cannot be extended Chebyshev over the interval.
class NotECT : public Error {
public:
  NotECT(int index, double location, const std::string& what)
      : Error("not an extended Chebyshev space (basis index " + std::to_string(index) +
              ", x=" + std::to_string(location) + "): " + what),
        index(index),
        location(location) {}

  int index;
  double location;
};

/// Containment check between two spaces failed.
class NotNested : public Error {
  using Error::Error;
};

/// A degree-elevation coefficient came out non-positive (basis defect upstream).
class NonPositiveElevation : public Error {
public:
  explicit NonPositiveElevation(int index)
      : Error("non-positive elevation coefficient at index " + std::to_string(index)),
        index(index) {}

  int index;
};

/// Function is not in the span of the basis (reconstruction residual too large).
class NotInSpan : public Error {
public:
  explicit NotInSpan(double residual)
      : Error("function not in span: reconstruction residual " + std::to_string(residual)),
        residual(residual) {}

  double residual;
};

/// Requested ratio value lies outside the image of f1/f0 over [a,b].
class RatioOutOfRange : public Error {
public:
  explicit RatioOutOfRange(double value)
      : Error("ratio value " + std::to_string(value) + " outside the range of f1/f0"),
        value(value) {}

  double value;
};

/// No Bernstein operator fixing the pair exists on this space.
class Nonexistence : public Error {
public:
  Nonexistence(int index, double ratio, const std::string& why)
      : Error("no Bernstein operator exists (index " + std::to_string(index) +
              ", coefficient ratio " + std::to_string(ratio) + "): " + why),
        index(index),
        ratio(ratio) {}

  int index;
  double ratio;
};

/// Constructed operator failed to reproduce f0 or f1 on the verification grid.
class FixingResidual : public Error {
public:
  explicit FixingResidual(double residual)
      : Error("operator does not fix the pair: grid residual " + std::to_string(residual)),
        residual(residual) {}

  double residual;
};

/// Nodes of consecutive chain levels failed to interlace strictly.
class InterlacingViolation : public Error {
public:
  InterlacingViolation(int level, int index)
      : Error("interlacing violation at level " + std::to_string(level) + ", node " +
              std::to_string(index)),
        level(level),
        index(index) {}

  int level;
  int index;
};

/// Operators passed to a consecutive-level computation are not consecutive.
class MismatchedLevels : public Error {
  using Error::Error;
};

/// A theorem hypothesis (e.g. increasing nodes) does not hold for the input.
class HypothesisViolation : public Error {
  using Error::Error;
};

/// The reference function of a g-monotonicity test is not positive everywhere.
class NonPositiveG : public Error {
public:
  explicit NonPositiveG(double point)
      : Error("g is not positive at x=" + std::to_string(point)), point(point) {}

  double point;
};

/// A linear system that should be regular turned out numerically singular.
class SingularSystem : public Error {
  using Error::Error;
};

}  // namespace chebbern
