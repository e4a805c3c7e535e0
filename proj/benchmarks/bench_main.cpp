#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "dapprox/arithmetic.hpp"
#include "dapprox/counting.hpp"
#include "dapprox/covers.hpp"
#include "dapprox/residues.hpp"

namespace {

void BM_FactorizeSieved(benchmark::State& state) {
  const auto& fz = dapprox::default_factorizer();
  std::uint64_t n = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fz.factorize(n));
    n = n % 10'000'000 + 7919;
  }
}
BENCHMARK(BM_FactorizeSieved);

void BM_FactorizeLarge(benchmark::State& state) {
  std::mt19937_64 gen(42);
  const auto& fz = dapprox::default_factorizer();
  for (auto _ : state) {
    const std::uint64_t n = (gen() >> 1) | 1;
    benchmark::DoNotOptimize(fz.factorize(n));
  }
}
BENCHMARK(BM_FactorizeLarge);

void BM_PowerResidueCount(benchmark::State& state) {
  const unsigned d = static_cast<unsigned>(state.range(0));
  std::uint64_t q = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::power_residue_count(q, d));
    q = q % 1'000'000 + 1;
  }
}
BENCHMARK(BM_PowerResidueCount)->Arg(2)->Arg(3)->Arg(6);

void BM_IsPowerResidue(benchmark::State& state) {
  std::mt19937_64 gen(7);
  for (auto _ : state) {
    const std::uint64_t q = gen() % 1'000'000 + 1;
    const dapprox::Integer b = dapprox::to_integer(static_cast<std::uint64_t>(gen() % q));
    benchmark::DoNotOptimize(dapprox::is_power_residue(b, q, 2, 1));
  }
}
BENCHMARK(BM_IsPowerResidue);

void BM_FindHits(benchmark::State& state) {
  const auto alpha = dapprox::AlphaValue::dyadic_random(1729, 128, 0);
  dapprox::ScanParams params;
  params.degree = 2;
  params.a_d = 1;
  params.tau = dapprox::Rational(5, 2);
  params.qmax = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dapprox::find_hits(alpha, params));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FindHits)->Arg(1 << 10)->Arg(1 << 14);

void BM_TailSum(benchmark::State& state) {
  dapprox::CoverOptions options;
  options.round_terms = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dapprox::tail_sum(dapprox::Rational(7, 2), 2, 1, 1,
                                               static_cast<std::uint64_t>(state.range(0)),
                                               dapprox::GcdBand::full(), options));
  }
}
BENCHMARK(BM_TailSum)->Arg(1 << 10)->Arg(1 << 14);

}  // namespace

BENCHMARK_MAIN();
