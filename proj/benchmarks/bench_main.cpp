#include <benchmark/benchmark.h>

#include "cliffkit/curve/riemann_roch.hpp"
#include "cliffkit/exactla/linalg.hpp"
#include "cliffkit/koszul/koszul.hpp"
#include "cliffkit/linser/multiplication.hpp"
#include "cliffkit/secant/secant.hpp"

using namespace cliff;
using curve::Curve;
using curve::Divisor;
using la::Fp;
using linser::LineBundle;

namespace {

constexpr uint32_t kPrime = 32003;

Curve hyperelliptic(int m) {
  auto f = curve::Poly::constant(Fp(1, kPrime));
  for (int r = 1; r <= m; ++r) f = f * curve::Poly::x_minus(Fp(r, kPrime));
  return Curve::create(2, f);
}

Divisor distinct_points(const Curve& C, int d, uint64_t seed) {
  Rng rng(seed);
  Divisor D;
  while (D.degree() < d) {
    const auto P = C.sample_place(rng);
    if (D.coefficient(P) == 0) D.add(P, 1);
  }
  return D;
}

void PrimeRank(benchmark::State& state) {
  const auto n = static_cast<size_t>(state.range(0));
  Rng rng(1);
  la::Matrix<Fp> m(n, n, kPrime);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(kPrime);
  for (auto _ : state) benchmark::DoNotOptimize(la::rank(m));
  state.SetComplexityN(static_cast<int64_t>(n));
}
BENCHMARK(PrimeRank)->RangeMultiplier(2)->Range(32, 256)->Complexity(benchmark::oNCubed);

void RiemannRochSpace(benchmark::State& state) {
  const Curve C = hyperelliptic(7);
  const Divisor D = distinct_points(C, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(curve::riemann_roch_space(C, D));
}
BENCHMARK(RiemannRochSpace)->Arg(6)->Arg(12)->Arg(24);

void MinorSpan(benchmark::State& state) {
  const Curve C = hyperelliptic(5);
  const auto L = LineBundle::of(distinct_points(C, static_cast<int>(state.range(0)), 3));
  const auto T = linser::mult_map(C, L, L);
  for (auto _ : state) benchmark::DoNotOptimize(secant::minor_span(T, 2).dim());
}
BENCHMARK(MinorSpan)->Arg(5)->Arg(6)->Arg(7);

void KoszulBoundary(benchmark::State& state) {
  const Curve C = hyperelliptic(7);
  const auto K = LineBundle::canonical(C).twist(distinct_points(C, static_cast<int>(state.range(0)), 4));
  for (auto _ : state) {
    koszul::KoszulComplex kc(C, K);
    benchmark::DoNotOptimize(kc.dim(1, 1));
  }
}
BENCHMARK(KoszulBoundary)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
