#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace chebbern;

namespace {

// Built-in spaces exercised by the structural property checks.
std::vector<ChebyshevSpace> structural_suite() {
  std::vector<ChebyshevSpace> spaces;
  for (int n = 0; n <= 8; ++n) spaces.push_back(make_polynomial_space(n, Interval(0.0, 1.0)));
  spaces.push_back(make_polynomial_space(5, Interval(-1.0, 2.0)));
  spaces.push_back(make_exponential_space({0.0, 1.0, 2.0, 3.0}, Interval(0.0, 1.0)));
  spaces.push_back(make_exponential_space({-1.0, -1.0, 2.0}, Interval(0.0, 1.0)));
  for (double b : {1.0, 2.0, std::numbers::pi, 4.0, 5.0, 6.2}) spaces.push_back(make_trig_space(b));
  return spaces;
}

double scaled_endpoint_value(const ChebyshevSpace& space, const std::vector<double>& coeffs,
                             double x, int order) {
  double scale = 0.0;
  for (std::size_t j = 0; j < space.dimension(); ++j)
    scale = std::max(scale, std::abs(space.eval_member(j, x, order)));
  double s = 0.0;
  for (std::size_t j = 0; j < space.dimension(); ++j)
    s += coeffs[j] * space.eval_member(j, x, order);
  return s / scale;
}

}  // namespace

TEST_CASE("classical low-degree bases have their known closed forms") {
  const Interval unit(0.0, 1.0);

  auto b1 = build_bernstein_basis(make_polynomial_space(1, unit));
  for (double x : testutil::grid(unit, 17)) {
    CHECK(b1.eval(0, x) == doctest::Approx(2.0 * (1.0 - x)));
    CHECK(b1.eval(1, x) == doctest::Approx(2.0 * x));
  }

  auto b2 = build_bernstein_basis(make_polynomial_space(2, unit));
  for (double x : testutil::grid(unit, 17))
    CHECK(b2.eval(1, x) == doctest::Approx(4.0 * x * (1.0 - x)));

  CHECK(eval_basis(b2, 1, 0.5) == doctest::Approx(1.0));
  CHECK(eval_basis(b2, 0, 1.0) == doctest::Approx(0.0));
  CHECK(eval_basis(b2, 2, 1.0) == doctest::Approx(4.0));
}

TEST_CASE("trig basis function with full zero order at a is proportional to x - sin x") {
  auto basis = build_bernstein_basis(make_trig_space(2.0));
  const double ref = basis.eval(3, 1.0) / (1.0 - std::sin(1.0));
  for (double x : testutil::grid(Interval(0.1, 2.0), 16)) {
    CHECK(basis.eval(3, x) == doctest::Approx(ref * (x - std::sin(x))).epsilon(1e-11));
  }
}

TEST_CASE("zero orders, positivity, normalization across built-in spaces") {
  for (const auto& space : structural_suite()) {
    const int n = space.degree();
    const Interval& iv = space.interval();
    auto basis = build_bernstein_basis(space);

    for (int k = 0; k <= n; ++k) {
      const auto& c = basis.coeffs[k];
      double cmax = 0.0;
      for (double v : c) cmax = std::max(cmax, std::abs(v));

      for (int i = 0; i < k; ++i)
        CHECK(std::abs(scaled_endpoint_value(space, c, iv.a, i)) < 1e-9 * cmax);
      CHECK(std::abs(scaled_endpoint_value(space, c, iv.a, k)) > 1e-6 * cmax);
      for (int i = 0; i < n - k; ++i)
        CHECK(std::abs(scaled_endpoint_value(space, c, iv.b, i)) < 1e-9 * cmax);
      CHECK(std::abs(scaled_endpoint_value(space, c, iv.b, n - k)) > 1e-6 * cmax);

      CHECK(basis.eval(k, iv.midpoint()) == doctest::Approx(1.0).epsilon(1e-12));

      double min_value = 0.0;
      double max_value = 0.0;
      for (int g = 1; g <= 513; ++g) {
        const double x = iv.a + iv.length() * g / 514.0;
        const double v = basis.eval(k, x);
        min_value = std::min(min_value, v);
        max_value = std::max(max_value, std::abs(v));
      }
      CHECK(min_value >= -1e-12 * max_value);
    }
  }
}

TEST_CASE("basis is invariant under positive rescaling of the raw members") {
  const Interval unit(0.0, 1.0);
  auto reference_space = make_polynomial_space(4, unit);
  auto reference = build_bernstein_basis(reference_space);

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> scale_dist(0.2, 5.0);
  std::vector<FunctionDescriptor> rescaled;
  for (int j = 0; j <= 4; ++j)
    rescaled.push_back(FunctionDescriptor::combination({scale_dist(rng)},
                                                       {FunctionDescriptor::monomial(j)}));
  auto basis = build_bernstein_basis(ChebyshevSpace(unit, rescaled, SpaceKind::custom));

  for (double x : testutil::grid(unit, 33))
    for (int k = 0; k <= 4; ++k)
      CHECK(basis.eval(k, x) == doctest::Approx(reference.eval(k, x)).epsilon(1e-10));
}

TEST_CASE("trig basis reflection symmetry") {
  for (double b : {1.0, 2.0, std::numbers::pi, 4.4}) {
    auto basis = build_bernstein_basis(make_trig_space(b));
    for (double x : testutil::grid(Interval(0.0, b), 41))
      for (int k = 0; k <= 3; ++k)
        CHECK(basis.eval(k, b - x) == doctest::Approx(basis.eval(3 - k, x)).epsilon(1e-10));
  }
}

TEST_CASE("eval_basis rejects out-of-range indices") {
  auto basis = build_bernstein_basis(make_polynomial_space(2, Interval(0.0, 1.0)));
  CHECK_THROWS_AS(eval_basis(basis, 3, 0.5), std::out_of_range);
  CHECK_THROWS_AS(eval_basis(basis, 0, 0.5, 3), std::out_of_range);
  CHECK_THROWS_AS(eval_basis(basis, 0, 0.5, -1), std::out_of_range);
}

TEST_CASE("degenerate and non-ECT spaces are rejected") {
  const Interval unit(0.0, 1.0);

  // Every member has a double zero at b, so the k = 0 constraint rows at b
  // vanish identically and the kernel is not one-dimensional.
  auto bridge = [](int extra) {
    // x^(2+extra) (1-x)^2 expanded over monomials
    return FunctionDescriptor::combination(
        {1.0, -2.0, 1.0},
        {FunctionDescriptor::monomial(2 + extra), FunctionDescriptor::monomial(3 + extra),
         FunctionDescriptor::monomial(4 + extra)});
  };
  ChebyshevSpace flat(unit, {bridge(0), bridge(1), bridge(2)}, SpaceKind::custom);
  CHECK_THROWS_AS(build_bernstein_basis(flat), DegenerateSpace);

  // Members vanishing at a: exact-order-zero condition at a cannot hold.
  ChebyshevSpace vanishing(unit,
                           {FunctionDescriptor::monomial(1), FunctionDescriptor::monomial(2)},
                           SpaceKind::custom);
  CHECK_THROWS_AS(build_bernstein_basis(vanishing), NotECT);

  // <1, x, x^3> over [-1, 1.5]: x^3 - 1.75x - 0.75 has all three roots
  // inside, so the candidate for k = 1 changes sign in the interior.
  ChebyshevSpace cubic(Interval(-1.0, 1.5),
                       {FunctionDescriptor::constant(1.0), FunctionDescriptor::monomial(1),
                        FunctionDescriptor::monomial(3)},
                       SpaceKind::custom);
  CHECK_THROWS_AS(build_bernstein_basis(cubic), NotECT);
}

TEST_CASE("elevation pairs: classical 1 -> 2") {
  const Interval unit(0.0, 1.0);
  auto lower = build_bernstein_basis(make_polynomial_space(1, unit));
  auto upper = build_bernstein_basis(make_polynomial_space(2, unit));
  auto pairs = elevation_pairs(lower, upper);
  REQUIRE(pairs.size() == 2);

  // Independent oracle: least-squares fit of p_{1,k} against the two upper
  // candidates on a grid.
  const auto xs = testutil::grid(unit, 101);
  for (int k = 0; k <= 1; ++k) {
    std::vector<std::vector<double>> cols(2, std::vector<double>(xs.size()));
    std::vector<double> y(xs.size());
    for (std::size_t g = 0; g < xs.size(); ++g) {
      cols[0][g] = upper.eval(k, xs[g]);
      cols[1][g] = upper.eval(k + 1, xs[g]);
      y[g] = lower.eval(k, xs[g]);
    }
    const auto fit = testutil::ls_fit(cols, y);
    CHECK(pairs[k].at_a == doctest::Approx(fit[0]).epsilon(1e-10));
    CHECK(pairs[k].at_b == doctest::Approx(fit[1]).epsilon(1e-10));
  }

  // With midpoint-one bases both coefficients are exactly one half.
  CHECK(pairs[0].at_a == doctest::Approx(0.5));
  CHECK(pairs[0].at_b == doctest::Approx(0.5));
  CHECK(pairs[1].at_a == doctest::Approx(0.5));
  CHECK(pairs[1].at_b == doctest::Approx(0.5));
}

TEST_CASE("elevation identity holds pointwise for nested built-in pairs") {
  const Interval unit(0.0, 1.0);
  std::vector<std::pair<ChebyshevSpace, ChebyshevSpace>> nested;
  for (int n = 1; n <= 7; ++n)
    nested.emplace_back(make_polynomial_space(n, unit), make_polynomial_space(n + 1, unit));
  nested.emplace_back(make_exponential_space({0.0, 1.0}, unit),
                      make_exponential_space({0.0, 1.0, 2.0}, unit));
  nested.emplace_back(make_exponential_space({0.0, 1.0, 2.0}, unit),
                      make_exponential_space({0.0, 1.0, 2.0, 3.0}, unit));

  for (const auto& [lo, hi] : nested) {
    auto lower = build_bernstein_basis(lo);
    auto upper = build_bernstein_basis(hi);
    auto pairs = elevation_pairs(lower, upper);
    const int n = lower.degree();
    for (int k = 0; k <= n; ++k) {
      CHECK(pairs[k].at_a > 0.0);
      CHECK(pairs[k].at_b > 0.0);
      for (double x : testutil::grid(unit, 257)) {
        const double reconstructed =
            pairs[k].at_a * upper.eval(k, x) + pairs[k].at_b * upper.eval(k + 1, x);
        CHECK(std::abs(lower.eval(k, x) - reconstructed) < 1e-9);
      }
    }
  }
}

TEST_CASE("elevation rejects non-nested inputs") {
  const Interval unit(0.0, 1.0);
  auto poly1 = build_bernstein_basis(make_polynomial_space(1, unit));
  auto poly2 = build_bernstein_basis(make_polynomial_space(2, unit));
  auto poly4 = build_bernstein_basis(make_polynomial_space(4, unit));
  auto shifted = build_bernstein_basis(make_polynomial_space(2, Interval(0.0, 2.0)));
  auto expo = build_bernstein_basis(make_exponential_space({1.0, 2.0, 3.0}, unit));

  CHECK_THROWS_AS(elevation_pairs(poly1, poly4), NotNested);    // dimensions not consecutive
  CHECK_THROWS_AS(elevation_pairs(poly1, shifted), NotNested);  // different interval
  CHECK_THROWS_AS(elevation_pairs(poly2, expo), NotNested);     // x^2 not an exponential sum
}
