#include <benchmark/benchmark.h>

#include <cmath>

#include "chebbern/chebbern.hpp"

using namespace chebbern;

namespace {

HaarPair pair_one_x() {
  return make_haar_pair(FunctionDescriptor::constant(1.0), FunctionDescriptor::monomial(1),
                        Interval(0.0, 1.0));
}

void BM_BuildBasis(benchmark::State& state) {
  auto space = make_polynomial_space(static_cast<int>(state.range(0)), Interval(0.0, 1.0));
  for (auto _ : state) benchmark::DoNotOptimize(build_bernstein_basis(space));
}
BENCHMARK(BM_BuildBasis)->Arg(4)->Arg(8)->Arg(12);

void BM_BuildOperator(benchmark::State& state) {
  auto basis =
      build_bernstein_basis(make_polynomial_space(static_cast<int>(state.range(0)),
                                                  Interval(0.0, 1.0)));
  auto pair = pair_one_x();
  for (auto _ : state) benchmark::DoNotOptimize(build_operator(basis, pair));
}
BENCHMARK(BM_BuildOperator)->Arg(4)->Arg(8);

void BM_ApplyOperator(benchmark::State& state) {
  auto op = build_operator(
      build_bernstein_basis(make_polynomial_space(8, Interval(0.0, 1.0))), pair_one_x());
  auto f = [](double x) { return x * x; };
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(apply_operator(op, f, x));
    x += 1e-4;
    if (x > 1.0) x = 0.0;
  }
}
BENCHMARK(BM_ApplyOperator);

void BM_ConvexitySweep(benchmark::State& state) {
  auto pair = pair_one_x();
  auto f = [](double x) { return std::exp(x); };
  for (auto _ : state)
    benchmark::DoNotOptimize(is_convex_sampled(pair, f, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_ConvexitySweep)->Arg(33)->Arg(65);

void BM_TrigCase(benchmark::State& state) {
  double b = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(trig_case(b));
    b += 1e-3;
    if (b > 6.0) b = 0.5;
  }
}
BENCHMARK(BM_TrigCase);

}  // namespace

BENCHMARK_MAIN();
