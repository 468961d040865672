#include <random>
#include <span>
#include <vector>

#include <benchmark/benchmark.h>

#include "collindiag/kernels.hpp"

using collindiag::Matrix;
using namespace collindiag::kernels;

namespace {

struct Columns {
  std::vector<std::vector<double>> data;
  std::vector<std::span<const double>> views;

  Columns(std::size_t n, std::size_t k) : data(k, std::vector<double>(n)) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& c : data) {
      for (double& v : c) v = gauss(rng);
      views.emplace_back(c);
    }
  }
};

template <Matrix (*Kernel)(ColumnViews)>
void crossprod(benchmark::State& state) {
  const Columns cols(static_cast<std::size_t>(state.range(0)), 8);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(cols.views));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <ColumnMoments (*Kernel)(std::span<const double>)>
void moments(benchmark::State& state) {
  const Columns cols(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(cols.views[0]));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(crossprod<crossprod_reference>)->Name("crossprod/reference")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(crossprod<crossprod_parallel>)->Name("crossprod/parallel")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(moments<moments_reference>)->Name("moments/reference")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);
BENCHMARK(moments<moments_parallel>)->Name("moments/parallel")->RangeMultiplier(16)->Range(1 << 10, 1 << 22);

BENCHMARK_MAIN();
