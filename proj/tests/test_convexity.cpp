#include <cmath>
#include <random>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace chebbern;

namespace {

HaarPair pair_one_x(const Interval& iv) {
  return make_haar_pair(FunctionDescriptor::constant(1.0), FunctionDescriptor::monomial(1), iv);
}

HaarPair pair_one_x2() {
  return make_haar_pair(FunctionDescriptor::constant(1.0), FunctionDescriptor::monomial(2),
                        Interval(0.0, 1.0));
}

OperatorChain classical_chain(int top) {
  std::vector<ChebyshevSpace> spaces;
  for (int n = 1; n <= top; ++n) spaces.push_back(make_polynomial_space(n, Interval(0.0, 1.0)));
  return build_chain(spaces, pair_one_x(Interval(0.0, 1.0)));
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("det3 values and ordering guard") {
  auto p = pair_one_x(Interval(0.0, 1.0));
  auto square = [](double x) { return x * x; };

  CHECK(det3(p, square, 0.0, 0.5, 1.0) == doctest::Approx(0.25));
  CHECK_THROWS_AS(det3(p, square, 0.5, 0.2, 1.0), DomainError);

  // Affine functions give a dependent row.
  auto affine = [](double x) { return 3.0 - 2.0 * x; };
  for (auto [x0, x1, x2] : {std::array<double, 3>{0.0, 0.5, 1.0},
                            std::array<double, 3>{0.1, 0.2, 0.9}})
    CHECK(det3(p, affine, x0, x1, x2) == doctest::Approx(0.0));

  auto p2 = pair_one_x2();
  CHECK(det3(p2, [](double x) { return x; }, 0.1, 0.5, 0.9) ==
        doctest::Approx(-0.128).epsilon(1e-12));
}

TEST_CASE("det3 is antisymmetric under column swaps") {
  auto p = pair_one_x2();
  auto f = [](double x) { return std::exp(x); };
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 25; ++t) {
    double x0 = u(rng), x1 = u(rng), x2 = u(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (x1 > x2) std::swap(x1, x2);
    if (x0 > x1) std::swap(x0, x1);
    if (x2 - x1 < 1e-6 || x1 - x0 < 1e-6) continue;
    const double d = det3(p, f, x0, x1, x2);
    // Swap the first two columns by hand.
    const double m[3][3] = {{p.f0(x1, 0), p.f0(x0, 0), p.f0(x2, 0)},
                            {p.f1(x1, 0), p.f1(x0, 0), p.f1(x2, 0)},
                            {f(x1), f(x0), f(x2)}};
    CHECK(testutil::det3x3(m) == doctest::Approx(-d).epsilon(1e-12));
  }
}

TEST_CASE("sampled convexity classification") {
  auto p = pair_one_x(Interval(0.0, 1.0));
  auto p2 = pair_one_x2();

  CHECK(is_convex_sampled(p, [](double x) { return x * x; }, 33).verdict ==
        ConvexityVerdict::convex);
  CHECK(is_convex_sampled(p2, [](double x) { return x; }, 33).verdict ==
        ConvexityVerdict::concave);
  CHECK(is_convex_sampled(p2, [](double x) { return x * x * x; }, 33).verdict ==
        ConvexityVerdict::convex);
  CHECK(is_convex_sampled(p, [](double x) { return 2.0 + 3.0 * x; }, 33).verdict ==
        ConvexityVerdict::affine);
  CHECK(is_convex_sampled(p, [](double x) { return std::sin(6.0 * x); }, 33).verdict ==
        ConvexityVerdict::neither);

  auto concave = is_convex_sampled(p2, [](double x) { return x; }, 33);
  CHECK(concave.min_det < 0.0);
  CHECK(concave.witness.has_value());
  CHECK(concave.triples_checked == 33L * 32L * 31L / 6L);

  CHECK_THROWS_AS(is_convex_sampled(p, [](double x) { return x; }, 2), DomainError);
}

TEST_CASE("sampled convexity subsamples deterministically above the cap") {
  auto p = pair_one_x(Interval(0.0, 1.0));
  auto f = [](double x) { return std::exp(x); };
  auto r1 = is_convex_sampled(p, f, 100, 42);
  auto r2 = is_convex_sampled(p, f, 100, 42);
  CHECK(r1.triples_checked < 100L * 99L * 98L / 6L);
  CHECK(r1.verdict == ConvexityVerdict::convex);
  CHECK(r1.min_det == r2.min_det);
  CHECK(r1.triples_checked == r2.triples_checked);
}

TEST_CASE("chord interpolant") {
  auto p = pair_one_x(Interval(0.0, 1.0));
  auto square = [](double x) { return x * x; };

  auto chord = chord_interpolant(p, square, 0.0, 1.0);
  for (double x : testutil::grid(Interval(0.0, 1.0), 21))
    CHECK(chord(x, 0) == doctest::Approx(x));  // the secant of the parabola
  CHECK(chord(0.5, 0) >= square(0.5));

  // Interpolation contract at the endpoints, for assorted functions.
  auto wavy = [](double x) { return std::sin(2.0 * x) + 0.3 * x; };
  for (auto [x0, x2] : {std::pair{0.1, 0.8}, std::pair{0.3, 0.4}}) {
    auto psi = chord_interpolant(p, wavy, x0, x2);
    CHECK(std::abs(psi(x0, 0) - wavy(x0)) < 1e-12);
    CHECK(std::abs(psi(x2, 0) - wavy(x2)) < 1e-12);
  }

  // Convex f: below the chord inside, above outside.
  auto psi = chord_interpolant(p, square, 0.2, 0.7);
  for (double x : testutil::grid(Interval(0.0, 1.0), 101)) {
    if (x > 0.2 && x < 0.7)
      CHECK(square(x) <= psi(x, 0) + 1e-12);
    else
      CHECK(square(x) >= psi(x, 0) - 1e-12);
  }

  CHECK_THROWS_AS(chord_interpolant(p, square, 0.7, 0.2), DomainError);
}

TEST_CASE("per-triple determinant sign matches the chord comparison") {
  auto p2 = pair_one_x2();
  auto f = [](double x) { return std::sin(2.5 * x) + x * x; };
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    double x0 = u(rng), x1 = u(rng), x2 = u(rng);
    if (x0 > x1) std::swap(x0, x1);
    if (x1 > x2) std::swap(x1, x2);
    if (x0 > x1) std::swap(x0, x1);
    if (x1 - x0 < 1e-3 || x2 - x1 < 1e-3) continue;
    const double det = det3(p2, f, x0, x1, x2);
    const double below_chord = chord_interpolant(p2, f, x0, x2)(x1, 0) - f(x1);
    // Both quantities vanish together; otherwise the signs agree.
    if (std::abs(det) > 1e-12)
      CHECK(det * below_chord > 0.0);
    else
      CHECK(std::abs(below_chord) < 1e-9);
  }
}

TEST_CASE("the ratio-composed transform linearizes generalized convexity") {
  auto p = pair_one_x(Interval(0.0, 1.0));
  auto f = [](double x) { return std::cos(x) + x; };
  auto t = convexity_transform(p, f);
  for (double u : testutil::grid(Interval(0.0, 1.0), 21))
    CHECK(t(u) == doctest::Approx(f(u)).epsilon(1e-12));  // identity ratio

  auto p2 = pair_one_x2();
  auto cube = [](double x) { return x * x * x; };
  auto t2 = convexity_transform(p2, cube);
  for (double u : testutil::grid(Interval(0.0, 1.0), 21))
    CHECK(t2(u) == doctest::Approx(std::pow(u, 1.5)).epsilon(1e-10));
}

TEST_CASE("transform verdict cross-checks the determinant verdict") {
  auto p2 = pair_one_x2();
  const Interval range(0.0, 1.0);  // image of x^2 over [0,1]
  auto range_pair = pair_one_x(range);

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> curve_coeff(0.5, 2.0);
  for (int t = 0; t < 20; ++t) {
    const double c0 = coeff(rng), c1 = coeff(rng);
    double c2 = curve_coeff(rng);
    if (t % 2 == 1) c2 = -c2;
    auto f = [c0, c1, c2](double x) { return c0 + c1 * x * x + c2 * x * x * x; };

    const auto direct = is_convex_sampled(p2, f, 33).verdict;
    auto transformed = convexity_transform(p2, f);
    const auto via_transform = is_convex_sampled(range_pair, transformed, 33).verdict;
    CHECK(direct == via_transform);
    CHECK(direct == (c2 > 0.0 ? ConvexityVerdict::convex : ConvexityVerdict::concave));
  }
}

TEST_CASE("majorization: B f >= f for generalized-convex f") {
  auto chain = classical_chain(4);
  const auto& op3 = chain.operators[2];

  auto maj = verify_majorization(op3, [](double x) { return x * x; }, 257);
  CHECK(maj.min_difference >= -1e-12);

  // Equality at the endpoints.
  auto square = [](double x) { return x * x; };
  CHECK(apply_operator(op3, square, 0.0) == doctest::Approx(0.0));
  CHECK(apply_operator(op3, square, 1.0) == doctest::Approx(1.0));

  // x is (1, x^2)-concave, so the (1, x^2)-fixing operator sits below it;
  // checked through -x, whose majorization minimum must be non-negative.
  auto basis4 = build_bernstein_basis(make_polynomial_space(4, Interval(0.0, 1.0)));
  auto op_0j = build_operator(basis4, pair_one_x2());
  auto neg = verify_majorization(op_0j, [](double x) { return -x; }, 257);
  CHECK(neg.min_difference >= -1e-9);

  // Members of the fixed span are reproduced exactly.
  auto affine = verify_majorization(op3, [](double x) { return 1.0 - 0.5 * x; }, 257);
  CHECK(std::abs(affine.min_difference) < 1e-10);
}

TEST_CASE("level difference decomposes over the upper basis") {
  auto chain = classical_chain(4);
  auto square = [](double x) { return x * x; };

  SUBCASE("matches the classical divided-difference identity") {
    // B_n f - B_{n+1} f = x(1-x)/(n(n+1)) * sum_k [k/n,(k+1)/(n+1),(k+1)/n]f
    //                     * C(n-1,k) x^k (1-x)^(n-1-k).
    for (int n = 2; n <= 3; ++n) {
      const auto& lo = chain.operators[n - 1];
      const auto& hi = chain.operators[n];
      auto f = [](double x) { return std::exp(2.0 * x); };
      for (double x : testutil::grid(Interval(0.0, 1.0), 101)) {
        double classical = 0.0;
        for (int k = 0; k <= n - 1; ++k) {
          const double dd = testutil::divided_difference2(
              f, static_cast<double>(k) / n, static_cast<double>(k + 1) / (n + 1),
              static_cast<double>(k + 1) / n);
          classical += dd * binomial(n - 1, k) * std::pow(x, k) * std::pow(1.0 - x, n - 1 - k);
        }
        classical *= x * (1.0 - x) / (n * (n + 1.0));
        const double difference = apply_operator(lo, f, x) - apply_operator(hi, f, x);
        CHECK(difference == doctest::Approx(classical).epsilon(1e-10));
      }
    }
  }

  SUBCASE("decomposition residual and convex sign") {
    auto arama = arama_decomposition(chain.operators[1], chain.operators[2], square);
    REQUIRE(arama.g_values.size() == 2);
    CHECK(arama.residual < 1e-9);
    // Every coefficient is non-negative for convex f; that is what forces
    // B_n f >= B_{n+1} f.
    for (double g : arama.g_values) CHECK(g >= -1e-10);

    for (double x : testutil::grid(Interval(0.0, 1.0), 101)) {
      const double b2 = apply_operator(chain.operators[1], square, x);
      const double b3 = apply_operator(chain.operators[2], square, x);
      CHECK(b2 >= b3 - 1e-10);
      CHECK(b3 >= square(x) - 1e-10);
    }
  }

  SUBCASE("span members annihilate every functional") {
    auto affine = [](double x) { return 2.0 - 0.7 * x; };
    auto arama = arama_decomposition(chain.operators[1], chain.operators[2], affine);
    for (double g : arama.g_values) CHECK(std::abs(g) < 1e-10);
  }

  SUBCASE("level mismatch is rejected") {
    CHECK_THROWS_AS(
        arama_decomposition(chain.operators[0], chain.operators[2], square),
        MismatchedLevels);
  }
}

TEST_CASE("exponential chain decomposition keeps the convex sign") {
  const Interval unit(0.0, 1.0);
  std::vector<ChebyshevSpace> spaces;
  for (int top = 1; top <= 3; ++top) {
    std::vector<double> lambdas;
    for (int l = 0; l <= top; ++l) lambdas.push_back(static_cast<double>(l));
    spaces.push_back(make_exponential_space(lambdas, unit));
  }
  auto pair = make_haar_pair(FunctionDescriptor::constant(1.0),
                             FunctionDescriptor::exp_monomial(0, 1.0), unit);
  auto chain = build_chain(spaces, pair);

  // e^{3x} composes with the ratio inverse to u^3: convex for this pair.
  auto f = [](double x) { return std::exp(3.0 * x); };
  for (std::size_t level = 0; level + 1 < chain.operators.size(); ++level) {
    auto arama = arama_decomposition(chain.operators[level], chain.operators[level + 1], f);
    CHECK(arama.residual < 1e-8 * std::exp(3.0));
    for (double g : arama.g_values) CHECK(g >= -1e-10);
  }
}

TEST_CASE("convexity preservation and its hypothesis guard") {
  auto chain = classical_chain(4);
  auto pair = pair_one_x(Interval(0.0, 1.0));
  auto kink = [](double x) { return std::abs(x - 0.5); };
  CHECK(verify_convexity_preservation(chain.operators[3], pair, kink, 33).verdict ==
        ConvexityVerdict::convex);

  auto trig_pair = pair_one_x(Interval(0.0, 2.0));
  auto op2 = build_operator(build_bernstein_basis(make_trig_space(2.0)), trig_pair);
  CHECK(verify_convexity_preservation(op2, trig_pair, [](double x) { return x * x; }, 41)
            .verdict == ConvexityVerdict::convex);

  auto trig4_pair = pair_one_x(Interval(0.0, 4.0));
  auto op4 = build_operator(build_bernstein_basis(make_trig_space(4.0)), trig4_pair);
  REQUIRE(op4.node_order == NodeOrder::nonmonotone);
  auto f = [&op4](double x) { return (x - op4.nodes[1]) * (x - op4.nodes[2]); };
  CHECK_THROWS_AS(verify_convexity_preservation(op4, trig4_pair, f, 41), HypothesisViolation);
  CHECK(verify_convexity_preservation(op4, trig4_pair, f, 41, true).verdict ==
        ConvexityVerdict::neither);
}

TEST_CASE("g-monotonicity verdicts") {
  const Interval unit(0.0, 1.0);
  auto one = FunctionDescriptor::constant(1.0);
  CHECK(is_g_monotone_sampled(one, [](double x) { return x; }, unit, 33) ==
        MonotoneVerdict::g_increasing);

  auto shift = FunctionDescriptor::combination(
      {1.0, 1.0}, {FunctionDescriptor::constant(1.0), FunctionDescriptor::monomial(1)});
  CHECK(is_g_monotone_sampled(shift, [](double) { return 1.0; }, unit, 33) ==
        MonotoneVerdict::g_decreasing);

  CHECK(is_g_monotone_sampled(one, [](double x) { return (x - 0.5) * (x - 0.5); }, unit, 33) ==
        MonotoneVerdict::neither);

  auto through_zero = FunctionDescriptor::combination({-0.5, 1.0},
                                                      {one, FunctionDescriptor::monomial(1)});
  CHECK_THROWS_AS(is_g_monotone_sampled(through_zero, [](double x) { return x; }, unit, 33),
                  NonPositiveG);

  // Operators with increasing nodes preserve g-monotonicity for positive g
  // in the fixed span.
  auto chain = classical_chain(4);
  const auto& op = chain.operators[3];
  auto f = [](double x) { return x * x; };
  CHECK(is_g_monotone_sampled(shift, f, unit, 33) == MonotoneVerdict::g_increasing);
  CHECK(is_g_monotone_sampled(shift, [&](double x) { return apply_operator(op, f, x); }, unit,
                              33) == MonotoneVerdict::g_increasing);
}

TEST_CASE("sign consistency of basis kernels") {
  auto classical = build_bernstein_basis(make_polynomial_space(3, Interval(0.0, 1.0)));
  auto r2 = sign_consistency_sampled(classical, 2, 1000, 1);
  CHECK(r2.trials == 1000);
  CHECK(r2.min_det_normalized >= -1e-10);

  auto trig = build_bernstein_basis(make_trig_space(2.0));
  auto r3 = sign_consistency_sampled(trig, 3, 1000, 1);
  CHECK(r3.min_det_normalized >= -1e-10);

  // A deliberately sign-flipped row produces a negative witness.
  BernsteinBasis broken = classical;
  for (double& v : broken.coeffs[1]) v = -v;
  auto flipped = sign_consistency_sampled(broken, 2, 500, 1);
  CHECK(flipped.min_det < 0.0);
  CHECK(flipped.witness_points.has_value());
  CHECK(flipped.witness_indices.has_value());

  // Not enough basis functions for a 2x2 minor.
  auto tiny = build_bernstein_basis(make_polynomial_space(0, Interval(0.0, 1.0)));
  CHECK(sign_consistency_sampled(tiny, 2, 100, 1).trials == 0);

  CHECK_THROWS_AS(sign_consistency_sampled(classical, 4, 10, 1), DomainError);
}
