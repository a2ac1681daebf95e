// Serial reference vs. the selected-output kernel, single- and multi-threaded.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "isoslope/kernels.hpp"

using namespace isoslope;

namespace {

struct Inputs {
  kernels::U64Ring ring{(std::uint64_t{1} << 61) - 1};
  std::vector<std::uint64_t> a, b, outputs;
  explicit Inputs(std::size_t len, std::size_t stride) : a(len), b(len) {
    std::mt19937_64 rng(len);
    for (auto& x : a) x = rng() % ring.modulus;
    for (auto& x : b) x = rng() % ring.modulus;
    for (std::size_t s = 0; s < len; s += stride) outputs.push_back(s);
  }
};

void BM_Reference(benchmark::State& state) {
  const Inputs in(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::cyclic_convolve_reference(in.ring, in.a, in.b));
}

void BM_Selected(benchmark::State& state) {
  const Inputs in(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const int threads = static_cast<int>(state.range(2));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::cyclic_convolve_at(in.ring, in.a, in.b, in.outputs, threads));
  }
  state.counters["outputs"] = static_cast<double>(in.outputs.size());
}

void BM_SelectedBig(benchmark::State& state) {
  const std::size_t len = static_cast<std::size_t>(state.range(0));
  const kernels::BigRing ring{mpz_class("1000000000000000000000000000000000000000000000000000000000007")};
  std::vector<mpz_class> a(len), b(len);
  std::mt19937_64 rng(len);
  for (std::size_t i = 0; i < len; ++i) {
    a[i] = mpz_class(static_cast<unsigned long>(rng())) * rng() % ring.modulus;
    b[i] = mpz_class(static_cast<unsigned long>(rng())) * rng() % ring.modulus;
  }
  std::vector<std::uint64_t> outputs;
  for (std::size_t s = 0; s < len; s += 8) outputs.push_back(s);
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::cyclic_convolve_at(ring, a, b, outputs, threads));
}

void selected_args(benchmark::internal::Benchmark* b) {
  std::vector<int> thread_counts{1};
  if (omp_get_max_threads() > 1) thread_counts.push_back(omp_get_max_threads());
  for (int len : {960, 4800, 29790}) {
    for (int threads : thread_counts) {
      b->Args({len, 1, threads});
      b->Args({len, 31, threads});
    }
  }
}

}  // namespace

BENCHMARK(BM_Reference)->Arg(960)->Arg(4800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Selected)->Apply(selected_args)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SelectedBig)->Args({2400, 1})->Args({2400, 0})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
