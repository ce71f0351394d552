// Serial reference vs OpenMP NMF kernels. Argument is the number of rows n
// (k = 4, d = 36 as in the NMF study).

#include "rbhmc/kernels.hpp"
#include "rbhmc/random.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace k = rbhmc::kernels;

namespace {

struct Problem {
  k::NmfShape shape;
  k::NmfParams params{1.0, 1.0, 0.5, 200.0};
  std::vector<double> X, W, A, residual, dW, dA;

  explicit Problem(std::size_t n) : shape{n, 4, 36} {
    rbhmc::RandomStream rng(1);
    auto fill = [&](std::vector<double>& v, std::size_t size) {
      v.resize(size);
      for (auto& x : v) x = rng.uniform();
    };
    fill(X, n * shape.d);
    fill(W, n * shape.k);
    fill(A, shape.k * shape.d);
    residual.resize(n * shape.d);
    dW.resize(n * shape.k);
    dA.resize(shape.k * shape.d);
  }
};

template <bool Parallel>
void BM_Gradient(benchmark::State& state) {
  Problem p(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::parallel::nmf_gradient(p.shape, p.params, p.X, p.W, p.A, p.residual, p.dW, p.dA);
    } else {
      k::serial::nmf_gradient(p.shape, p.params, p.X, p.W, p.A, p.residual, p.dW, p.dA);
    }
    benchmark::DoNotOptimize(p.dA.data());
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Potential(benchmark::State& state) {
  Problem p(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const double u = Parallel ? k::parallel::nmf_potential(p.shape, p.params, p.X, p.W, p.A)
                              : k::serial::nmf_potential(p.shape, p.params, p.X, p.W, p.A);
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_MeanAbsDiff(benchmark::State& state) {
  Problem p(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    const double v = Parallel ? k::parallel::mean_abs_diff(p.shape, p.X, p.W, p.A)
                              : k::serial::mean_abs_diff(p.shape, p.X, p.W, p.A);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Gradient<false>)->Name("nmf_gradient/serial")->Arg(200)->Arg(1000)->Arg(10000);
BENCHMARK(BM_Gradient<true>)->Name("nmf_gradient/parallel")->Arg(200)->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_Potential<false>)->Name("nmf_potential/serial")->Arg(200)->Arg(1000)->Arg(10000);
BENCHMARK(BM_Potential<true>)->Name("nmf_potential/parallel")->Arg(200)->Arg(1000)->Arg(10000)->UseRealTime();
BENCHMARK(BM_MeanAbsDiff<false>)->Name("mean_abs_diff/serial")->Arg(200)->Arg(1000)->Arg(10000);
BENCHMARK(BM_MeanAbsDiff<true>)->Name("mean_abs_diff/parallel")->Arg(200)->Arg(1000)->Arg(10000)->UseRealTime();

BENCHMARK_MAIN();
