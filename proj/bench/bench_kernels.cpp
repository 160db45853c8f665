// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "nkaq/quantum/kernels.hpp"
#include "nkaq/quantum/random.hpp"
#include "nkaq/series/series.hpp"
#include "nkaq/syntax/parser.hpp"

namespace {

using nkaq::Exec;
using namespace nkaq::quantum;

std::vector<Matrix> kraus_family(int d, int n) {
  Rng rng(7);
  return random_channel(d, d, n, rng).kraus();
}

template <Exec E>
void BM_ApplyKraus(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto ks = kraus_family(d, 8);
  Rng rng(11);
  const Matrix rho = random_density(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(apply_kraus(ks, rho, E));
}

template <Exec E>
void BM_TransferMatrix(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto ks = kraus_family(d, 4);
  for (auto _ : state) benchmark::DoNotOptimize(transfer_matrix(ks, E));
}

template <Exec E>
void BM_TruncatedSeries(benchmark::State& state) {
  const auto e = nkaq::syntax::parse_expr("(a b + c)* (a + b c)* a", nkaq::syntax::Alphabet::open());
  const nkaq::series::WordIndex idx({"a", "b", "c"}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nkaq::series::truncated_series(e, idx, E));
}

}  // namespace

BENCHMARK(BM_ApplyKraus<Exec::serial>)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(BM_ApplyKraus<Exec::parallel>)->Arg(16)->Arg(64)->Arg(128);
BENCHMARK(BM_TransferMatrix<Exec::serial>)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_TransferMatrix<Exec::parallel>)->Arg(8)->Arg(16)->Arg(24);
BENCHMARK(BM_TruncatedSeries<Exec::serial>)->Arg(5)->Arg(7);
BENCHMARK(BM_TruncatedSeries<Exec::parallel>)->Arg(5)->Arg(7);

BENCHMARK_MAIN();
