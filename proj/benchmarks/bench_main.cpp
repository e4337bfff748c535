#include <benchmark/benchmark.h>

#include "qsis/certify.hpp"
#include "qsis/generator.hpp"
#include "qsis/oracle.hpp"
#include "qsis/perturb.hpp"
#include "qsis/spectrum.hpp"

namespace {

using namespace qsis;

void BM_Periodization(benchmark::State& state) {
  const generator g = generator::bspline(static_cast<int>(state.range(0)));
  const int tail = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto profile = periodization(g, 256, tail);
    benchmark::DoNotOptimize(profile.g_min);
  }
}
BENCHMARK(BM_Periodization)->Args({1, 500})->Args({3, 500})->Args({1, 2000});

void BM_AmalgamSums(benchmark::State& state) {
  const generator g = generator::bspline(2);
  for (auto _ : state) {
    auto sums = amalgam_sums(g, 128, static_cast<int>(state.range(0)), -0.5);
    benchmark::DoNotOptimize(sums.lower_c);
  }
}
BENCHMARK(BM_AmalgamSums)->Arg(200)->Arg(600);

void BM_GramEigenvalues(benchmark::State& state) {
  const auto lattice = identity_set({1, static_cast<int>(state.range(0))});
  const auto gram = gram_matrix(generator::bspline(1), lattice);
  for (auto _ : state) {
    auto eig = empirical_bounds_p2(gram);
    benchmark::DoNotOptimize(eig.first);
  }
}
BENCHMARK(BM_GramEigenvalues)->Arg(32)->Arg(128)->Arg(256);

void BM_SynthesisNorm(benchmark::State& state) {
  const auto y = jitter_uniform({1, static_cast<int>(state.range(0))}, 0.1, 3);
  const generator g = generator::bspline(2);
  const auto a = random_coefficients(y.grid(), 2.0, 9, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesis_norm_power(g, y, a, 2.0));
  }
}
BENCHMARK(BM_SynthesisNorm)->Arg(16)->Arg(32)->Arg(64);

void BM_PerturbationPower(benchmark::State& state) {
  const auto y = jitter_uniform({1, 16}, 0.05, 5);
  const generator g = generator::rect();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        perturbation_power(g, y, exponent(2.0),
                           static_cast<int>(state.range(0)), 11));
  }
}
BENCHMARK(BM_PerturbationPower)->Arg(10)->Arg(50);

void BM_ExponentialGram(benchmark::State& state) {
  const auto y = jitter_uniform({1, static_cast<int>(state.range(0))}, 0.2, 7);
  for (auto _ : state) {
    auto eig = exponential_gram_bounds(y);
    benchmark::DoNotOptimize(eig.first);
  }
}
BENCHMARK(BM_ExponentialGram)->Arg(16)->Arg(32);

void BM_RectCertificate(benchmark::State& state) {
  const auto y = jitter_uniform({1, 64}, 0.1, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify_rect(y, exponent(2.0)).budget_cp);
  }
}
BENCHMARK(BM_RectCertificate);

}  // namespace

BENCHMARK_MAIN();
