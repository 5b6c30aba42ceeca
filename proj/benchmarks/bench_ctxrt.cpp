#include <benchmark/benchmark.h>

#include "ctxrt/convert.hpp"
#include "ctxrt/lp.hpp"
#include "ctxrt/monotone.hpp"
#include "ctxrt/ncycle.hpp"
#include "ctxrt/wiring.hpp"

using namespace ctxrt;

namespace {

Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

void BM_LpSimplexFeasibility(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  lp::LinearProgram p(k);
  p.add_eq(RationalVector(k, Rational(1)), Rational(1));
  for (std::size_t r = 1; r < k / 2; ++r) {
    RationalVector row(k, Rational(0));
    row[r] = 1;
    row[k - r] = -1;
    p.add_eq(std::move(row), Rational(0));
  }
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve(p));
}
BENCHMARK(BM_LpSimplexFeasibility)->Arg(16)->Arg(64)->Arg(256);

void BM_EnumerateHomomorphismsAndSymmetries(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_homomorphisms(n));
    benchmark::DoNotOptimize(enumerate_symmetries(n));
  }
}
BENCHMARK(BM_EnumerateHomomorphismsAndSymmetries)->DenseRange(4, 6);

void BM_Images(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto pr = make_pr(OmegaFunctional::from_index(n, 0));
  for (auto _ : state) benchmark::DoNotOptimize(images(pr));
}
BENCHMARK(BM_Images)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CanConvertChainLink(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto f = OmegaFunctional::from_index(n, 0);
  const auto hi = make_f_alpha(f, frac(3, 4));
  const auto lo = make_f_alpha(f, frac(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(can_convert(hi, lo));
}
BENCHMARK(BM_CanConvertChainLink)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_MomegaOracle(benchmark::State& state) {
  const auto b = make_b_alpha_gamma(OmegaFunctional::from_index(4, 0), frac(1, 2), frac(1, 4));
  for (auto _ : state) benchmark::DoNotOptimize(m_omega_oracle(b));
}
BENCHMARK(BM_MomegaOracle)->Unit(benchmark::kMillisecond);

void BM_DecomposeChannel(benchmark::State& state) {
  const auto id = DeterministicWiring::identity(4);
  const auto syms = enumerate_symmetries(4);
  WiringMixture m{{{frac(1, 2), id}, {frac(1, 3), syms[5]}, {frac(1, 6), syms[77]}}};
  const auto channel = channel_of(m);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_in_polytope(channel));
}
BENCHMARK(BM_DecomposeChannel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
