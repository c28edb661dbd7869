#include <benchmark/benchmark.h>

#include "sl2grow/search.hpp"

namespace {

using namespace sl2grow;

void BM_SearchTruncated(benchmark::State& state) {
  SearchConfig cfg;
  cfg.max_depth = static_cast<unsigned>(state.range(0));
  std::uint64_t nodes = 0;
  for (auto _ : state) nodes += backtrack_search(cfg).nodes_visited;
  state.counters["nodes/s"] = benchmark::Counter(static_cast<double>(nodes), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SearchTruncated)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SearchP3(benchmark::State& state) {
  SearchConfig cfg;
  cfg.p = 3;
  for (auto _ : state) benchmark::DoNotOptimize(backtrack_search(cfg));
}
BENCHMARK(BM_SearchP3)->Unit(benchmark::kMicrosecond);

}  // namespace
