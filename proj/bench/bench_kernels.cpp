#include <benchmark/benchmark.h>

#include <random>

#include "szego/kernels.hpp"
#include "szego/series.hpp"

namespace {

using szego::cplx;

const szego::ExteriorMap& skew() {
  static const szego::ExteriorMap map = szego::builtin_map("skew");
  return map;
}

void BM_TupleSerial(benchmark::State& state) {
  const auto s = szego::curve_samples(skew(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(szego::kernels::serial::coulomb_tuple_sum(s.points, s.weights, 3));
}

void BM_TupleParallel(benchmark::State& state) {
  const auto s = szego::curve_samples(skew(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(szego::kernels::coulomb_tuple_sum(s.points, s.weights, 3));
}

void BM_GrunskyGridSerial(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(szego::kernels::serial::grunsky_log_grid(skew(), 1.2, static_cast<int>(state.range(0))));
}

void BM_GrunskyGridParallel(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(szego::kernels::grunsky_log_grid(skew(), 1.2, static_cast<int>(state.range(0))));
}

Eigen::MatrixXcd random_basis(int N, int n) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  Eigen::MatrixXcd q(N, n);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = cplx(d(rng), d(rng));
  return q;
}

std::vector<cplx> unit_phases(int N) {
  std::vector<cplx> p(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) p[static_cast<std::size_t>(i)] = std::polar(1.0, 0.3 * i);
  return p;
}

void BM_TwistedGramSerial(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto q = random_basis(N, 40);
  const auto p = unit_phases(N);
  for (auto _ : state) benchmark::DoNotOptimize(szego::kernels::serial::twisted_gram(q, p));
}

void BM_TwistedGramParallel(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto q = random_basis(N, 40);
  const auto p = unit_phases(N);
  for (auto _ : state) benchmark::DoNotOptimize(szego::kernels::twisted_gram(q, p));
}

}  // namespace

BENCHMARK(BM_TupleSerial)->Arg(128)->Arg(256);
BENCHMARK(BM_TupleParallel)->Arg(128)->Arg(256);
BENCHMARK(BM_GrunskyGridSerial)->Arg(128)->Arg(256);
BENCHMARK(BM_GrunskyGridParallel)->Arg(128)->Arg(256);
BENCHMARK(BM_TwistedGramSerial)->Arg(1024)->Arg(4096);
BENCHMARK(BM_TwistedGramParallel)->Arg(1024)->Arg(4096);

int main(int argc, char** argv) {
  szego::configure_workers_from_env();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
