// Applying automorphisms, pairwise checks and recovery at n = 3.
#include <benchmark/benchmark.h>

#include "locaut/autos/generate.hpp"
#include "locaut/gallery/gallery.hpp"
#include "locaut/local/local_check.hpp"
#include "locaut/recover/recover.hpp"

using namespace locaut;

namespace {

// One benchmark per group; the argument indexes this table.
const char* const kGroups[] = {"gl-r-3", "sl-r-3", "gl-c-3", "sl-c-3", "u-3", "su-3"};

void BM_Apply(benchmark::State& state) {
  const GroupTag g = GroupTag::parse(kGroups[state.range(0)]);
  Rng rng(21);
  const Sigma s = g.field == Field::C ? Sigma::Conj : Sigma::Id;
  auto phi = random_automorphism(g, g.unitary() ? Kind::Standard : Kind::Contragredient, s, rng);
  std::vector<AnyMatrix> xs;
  for (int i = 0; i < 32; ++i) xs.push_back(random_element(g, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(phi.apply_scaled(xs[i++ % 32]));
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_Apply)->DenseRange(0, 5);

void BM_CheckPairGallery(benchmark::State& state) {
  auto item = gallery_gl_local_not_global(3);
  const auto& ps = item.samples.pairs;
  std::size_t k = 0;
  for (auto _ : state) {
    std::size_t i = k % ps.size(), j = (k / ps.size() + i + 1) % ps.size();
    if (i == j) j = (j + 1) % ps.size();
    benchmark::DoNotOptimize(check_pair(item.samples.group, ps[i], ps[j], k));
    ++k;
  }
}
BENCHMARK(BM_CheckPairGallery);

void BM_RecoverSLShort(benchmark::State& state) {
  const GroupTag g = GroupTag::parse("sl-r-3");
  Rng rng(31);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    AutomorphismOracle o(random_automorphism(g, rng.coin() ? Kind::Standard : Kind::Contragredient, Sigma::Id, rng));
    benchmark::DoNotOptimize(recover_SLnR_short(o, seed++));
  }
}
BENCHMARK(BM_RecoverSLShort)->Unit(benchmark::kMillisecond);

void BM_RecoverSU(benchmark::State& state) {
  const GroupTag g = GroupTag::parse("su-3");
  Rng rng(41);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    AutomorphismOracle o(random_automorphism(g, Kind::Standard, rng.coin() ? Sigma::Conj : Sigma::Id, rng, true));
    benchmark::DoNotOptimize(recover_SUn(o, seed++));
  }
}
BENCHMARK(BM_RecoverSU)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
