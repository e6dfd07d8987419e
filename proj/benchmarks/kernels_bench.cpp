#include <cmath>

#include <benchmark/benchmark.h>

#include "overdamp/diffusion_loop.hpp"
#include "overdamp/eigen.hpp"
#include "overdamp/quadrature.hpp"
#include "overdamp/random.hpp"
#include "overdamp/roots.hpp"
#include "overdamp/special.hpp"
#include "overdamp/spin_gorm.hpp"

using namespace overdamp;

static void BM_Cubic(benchmark::State& state) {
  double k = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(num::cubic_roots(100.0, 1.0 + 100.0 * k, 100.0));
    k += 1e-9;
  }
}
BENCHMARK(BM_Cubic);

static void BM_BesselJ1(benchmark::State& state) {
  const double u = static_cast<double>(state.range(0)) + 0.37;
  for (auto _ : state) benchmark::DoNotOptimize(num::bessel_j1(u));
}
BENCHMARK(BM_BesselJ1)->Arg(3)->Arg(15)->Arg(40)->Arg(4000);

static void BM_SymmetricEig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto sample = gorm::sample_goe(gorm::GormModel(2 * n, 0.2, 0.01), 1);
  for (auto _ : state) benchmark::DoNotOptimize(num::symmetric_eig(sample.hb, false));
}
BENCHMARK(BM_SymmetricEig)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_SectorSpectrum(benchmark::State& state) {
  const loop::LoopModel ring(static_cast<int>(state.range(0)), 1.0);
  const loop::DephasingBath bath(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(loop::sector_spectrum(ring, bath, 1));
}
BENCHMARK(BM_SectorSpectrum)->Arg(16)->Arg(64);

static void BM_Quadrature(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        num::adaptive_quadrature([](double x) { return std::exp(-x) * std::cos(3.0 * x); }, 0.0, num::kInf));
  }
}
BENCHMARK(BM_Quadrature);

BENCHMARK_MAIN();
