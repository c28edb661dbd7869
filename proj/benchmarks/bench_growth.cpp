#include <benchmark/benchmark.h>

#include "sl2grow/constructions.hpp"
#include "sl2grow/perturb.hpp"
#include "sl2grow/search.hpp"

namespace {

using namespace sl2grow;

void BM_TableCreate(benchmark::State& state) {
  const auto p = static_cast<std::uint32_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(GroupTable::create(p));
}
BENCHMARK(BM_TableCreate)->Arg(5)->Arg(17)->Arg(97)->Unit(benchmark::kMillisecond);

void BM_TripleOptimal(benchmark::State& state) {
  const auto table = GroupTable::create(static_cast<std::uint32_t>(state.range(0)));
  const ElementSet s = optimal_set(table);
  for (auto _ : state) benchmark::DoNotOptimize(triple(s));
}
BENCHMARK(BM_TripleOptimal)->Arg(17)->Arg(97)->Unit(benchmark::kMicrosecond);

void BM_ProductP5(benchmark::State& state) {
  const auto table = GroupTable::create(5);
  const ElementSet s = published_optimum(table);
  for (auto _ : state) benchmark::DoNotOptimize(product(s, s));
}
BENCHMARK(BM_ProductP5);

void BM_AnalyzeEvdlt(benchmark::State& state) {
  const auto table = GroupTable::create(static_cast<std::uint32_t>(state.range(0)));
  const ElementSet s = evdlt_set(table);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(s));
}
BENCHMARK(BM_AnalyzeEvdlt)->Arg(13)->Arg(29)->Unit(benchmark::kMillisecond);

void BM_FindGoodX(benchmark::State& state) {
  const auto table = GroupTable::create(17);
  const auto h = build_subgroup({SubgroupKind::Tag::TwoDotS4, 0}, table);
  for (auto _ : state) benchmark::DoNotOptimize(find_good_x(h.group));
}
BENCHMARK(BM_FindGoodX)->Unit(benchmark::kMillisecond);

void BM_PerturbSwapSample(benchmark::State& state) {
  const auto table = GroupTable::create(17);
  const ElementSet s = optimal_set(table);
  for (auto _ : state) benchmark::DoNotOptimize(perturb_swap(s, std::size_t{100}));
}
BENCHMARK(BM_PerturbSwapSample)->Unit(benchmark::kMillisecond);

}  // namespace
