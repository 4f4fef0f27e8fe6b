#include "f2lab/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using f2lab::kernels::Complex;
namespace serial = f2lab::kernels::serial;
namespace parallel = f2lab::kernels::parallel;

namespace {

std::vector<Complex> random_table(int dim) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(dim));
  std::normal_distribution<double> g;
  std::vector<Complex> v(std::size_t{1} << dim);
  for (auto& x : v) x = Complex(g(rng), g(rng));
  return v;
}

template <void (*Butterfly)(std::span<Complex>)>
void walsh(benchmark::State& state) {
  const auto base = random_table(static_cast<int>(state.range(0)));
  auto v = base;
  for (auto _ : state) {
    Butterfly(v);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}

template <Complex (*Naive)(std::span<const Complex>, int, int)>
void gowers_naive(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0)), d = static_cast<int>(state.range(1));
  const auto v = random_table(dim);
  for (auto _ : state) benchmark::DoNotOptimize(Naive(v, dim, d));
}

template <double (*Recursive)(std::span<const Complex>, int, int)>
void gowers_recursive(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0)), d = static_cast<int>(state.range(1));
  const auto v = random_table(dim);
  for (auto _ : state) benchmark::DoNotOptimize(Recursive(v, dim, d));
}

}  // namespace

BENCHMARK_TEMPLATE(walsh, serial::walsh_butterfly)->Name("walsh/serial")->DenseRange(14, 22, 4);
BENCHMARK_TEMPLATE(walsh, parallel::walsh_butterfly)->Name("walsh/parallel")->DenseRange(14, 22, 4);
BENCHMARK_TEMPLATE(gowers_naive, serial::gowers_naive_average)->Name("naive/serial")->Args({8, 2})->Args({6, 3});
BENCHMARK_TEMPLATE(gowers_naive, parallel::gowers_naive_average)->Name("naive/parallel")->Args({8, 2})->Args({6, 3});
BENCHMARK_TEMPLATE(gowers_recursive, serial::gowers_recursive_power)->Name("recursive/serial")->Args({10, 3})->Args({8, 4});
BENCHMARK_TEMPLATE(gowers_recursive, parallel::gowers_recursive_power)->Name("recursive/parallel")->Args({10, 3})->Args({8, 4});

BENCHMARK_MAIN();
