// Exact linear algebra on the matrix sizes the engines use.
#include <benchmark/benchmark.h>

#include "locaut/matrix/linalg.hpp"
#include "locaut/random.hpp"

using namespace locaut;

namespace {

template <class M, class Gen>
std::vector<M> batch(std::size_t n, Gen gen) {
  Rng rng(11);
  std::vector<M> out;
  for (int i = 0; i < 64; ++i) out.push_back(gen(n, rng));
  return out;
}

void BM_ProductQ(benchmark::State& state) {
  auto ms = batch<MatQ>(static_cast<std::size_t>(state.range(0)), random_gl_q);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ms[i % 64] * ms[(i + 1) % 64]);
    ++i;
  }
}
BENCHMARK(BM_ProductQ)->Arg(3)->Arg(4)->Arg(6);

void BM_ProductG(benchmark::State& state) {
  auto ms = batch<MatG>(static_cast<std::size_t>(state.range(0)), random_gl_g);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ms[i % 64] * ms[(i + 1) % 64]);
    ++i;
  }
}
BENCHMARK(BM_ProductG)->Arg(3)->Arg(4)->Arg(6);

void BM_DetG(benchmark::State& state) {
  auto ms = batch<MatG>(static_cast<std::size_t>(state.range(0)), random_gl_g);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(det(ms[i++ % 64]));
}
BENCHMARK(BM_DetG)->Arg(3)->Arg(4)->Arg(6);

void BM_InverseQ(benchmark::State& state) {
  auto ms = batch<MatQ>(static_cast<std::size_t>(state.range(0)), random_gl_q);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(inverse(ms[i++ % 64]));
}
BENCHMARK(BM_InverseQ)->Arg(3)->Arg(4)->Arg(6);

void BM_InverseG(benchmark::State& state) {
  auto ms = batch<MatG>(static_cast<std::size_t>(state.range(0)), random_gl_g);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(inverse(ms[i++ % 64]));
}
BENCHMARK(BM_InverseG)->Arg(3)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
