#include <benchmark/benchmark.h>

#include "nildeg/search.hpp"

using namespace nildeg;

namespace {

// l1 -> c1 has no witness, so every run exhausts the budget
void run(benchmark::State& state, bool parallel) {
  Field f = Field::prime(5);
  SearchOptions opt{static_cast<std::uint64_t>(state.range(0)), 1, 2};
  for (auto _ : state) {
    SearchResult r = parallel ? search_witness(AlgebraId::l1(), AlgebraId::c1(), f, opt)
                              : search_witness_serial(AlgebraId::l1(), AlgebraId::c1(), f, opt);
    benchmark::DoNotOptimize(r.examined);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SearchParallel(benchmark::State& state) { run(state, true); }
void BM_SearchSerial(benchmark::State& state) { run(state, false); }

void BM_SearchGeneric(benchmark::State& state) {
  Field f = Field::prime(5);
  SearchOptions opt{static_cast<std::uint64_t>(state.range(0)), 1, 2};
  for (auto _ : state) benchmark::DoNotOptimize(search_witness_generic(AlgebraId::l1(), AlgebraId::c1(), f, opt).examined);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_SearchParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SearchGeneric)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
