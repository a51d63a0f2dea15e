// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "ptspec/hobasis.hpp"
#include "ptspec/numerics/dense.hpp"
#include "ptspec/numerics/eigen.hpp"
#include "ptspec/shooting.hpp"

using namespace ptspec;

namespace {

numerics::CMatrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  numerics::CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = {u(rng), u(rng)};
  return m;
}

template <bool Parallel>
void BM_scan(benchmark::State& state) {
  const PotentialSpec spec(3.0);
  ShootingOptions opts;
  opts.scan_e_max = 20.0;
  const auto grid = scan_grid(spec, opts);
  for (auto _ : state) {
    auto trace = Parallel ? scan_miss_function(spec, grid, 8.0, opts)
                          : scan_miss_function_serial(spec, grid, 8.0, opts);
    benchmark::DoNotOptimize(trace);
  }
  state.counters["points"] = static_cast<double>(grid.size());
}

template <bool Parallel>
void BM_multiply(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_matrix(n, 1);
  const auto b = random_matrix(n, 2);
  for (auto _ : state) {
    auto c = Parallel ? numerics::multiply(a, b) : numerics::multiply_serial(a, b);
    benchmark::DoNotOptimize(c);
  }
}

template <bool Parallel>
void BM_eig_complex(benchmark::State& state) {
  const auto m = random_matrix(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    auto r = Parallel ? numerics::eig_dense_complex(m)
                      : numerics::eig_dense_complex_serial(m);
    benchmark::DoNotOptimize(r);
  }
}

template <bool Parallel>
void BM_raw_spectrum(benchmark::State& state) {
  const PotentialSpec spec(3.0);
  const auto size = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    auto r = raw_spectrum(spec, size, Parallel);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK_TEMPLATE(BM_scan, true)->Name("scan/parallel")->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_scan, false)->Name("scan/serial")->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_multiply, true)->Name("multiply/parallel")->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_multiply, false)->Name("multiply/serial")->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_eig_complex, true)->Name("eig_complex/parallel")->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_eig_complex, false)->Name("eig_complex/serial")->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_raw_spectrum, true)->Name("raw_spectrum/parallel")->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_raw_spectrum, false)->Name("raw_spectrum/serial")->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
