#include <benchmark/benchmark.h>

#include "mbg/boxgame.hpp"
#include "mbg/breaker.hpp"
#include "mbg/degree_game.hpp"
#include "mbg/engine.hpp"
#include "mbg/maker.hpp"

using namespace mbg;

namespace {

Graph random_graph(Vertex n, std::uint64_t per_mille, std::uint64_t seed) {
  Rng rng(seed);
  Graph g(n);
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b)
      if (rng.below(1000) < per_mille) g.add_edge(a, b);
  return g;
}

void BM_PotentialTable(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(box::f_table(static_cast<std::uint64_t>(st.range(0)), 10));
}
BENCHMARK(BM_PotentialTable)->Arg(1000)->Arg(10000);

void BM_ExactHamiltonCycle(benchmark::State& st) {
  const Graph g = random_graph(static_cast<Vertex>(st.range(0)), 250, 1);
  for (auto _ : st) benchmark::DoNotOptimize(exact::has_hamilton_cycle(g));
}
BENCHMARK(BM_ExactHamiltonCycle)->Arg(12)->Arg(16)->Arg(20);

void BM_AllBoosters(benchmark::State& st) {
  const auto n = static_cast<Vertex>(st.range(0));
  Graph g(n);
  for (Vertex v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  auto all_free = [](Vertex, Vertex) { return true; };
  for (auto _ : st) benchmark::DoNotOptimize(maker::all_boosters(g, all_free));
}
BENCHMARK(BM_AllBoosters)->Arg(12)->Arg(16);

template <class MakeMaker>
void play_game(benchmark::State& st, Goal goal, MakeMaker make) {
  const auto n = static_cast<Vertex>(st.range(0));
  const auto b = static_cast<std::uint32_t>(st.range(1));
  for (auto _ : st) {
    auto m = make();
    breaker::PoolBreaker br(breaker::PoolKind::Random, 1);
    benchmark::DoNotOptimize(play(new_game(n, b), *m, br, {.goal = goal}));
  }
}

void BM_Connectivity(benchmark::State& st) {
  play_game(st, Goal::Connectivity, [] { return std::make_unique<maker::ConnectivityMaker>(); });
}
BENCHMARK(BM_Connectivity)->Args({200, 2})->Args({1000, 2})->Unit(benchmark::kMillisecond);

void BM_PerfectMatching(benchmark::State& st) {
  const Config cfg = Config::parse("enforce_range = false\n");
  play_game(st, Goal::PerfectMatching, [&] { return std::make_unique<maker::PmMaker>(cfg, 1); });
}
BENCHMARK(BM_PerfectMatching)->Args({200, 2})->Args({1000, 2})->Unit(benchmark::kMillisecond);

void BM_MinDegree(benchmark::State& st) {
  play_game(st, Goal::MinDegree, [] { return std::make_unique<degree::MinDegreeMaker>(2); });
}
BENCHMARK(BM_MinDegree)->Args({200, 1})->Args({1000, 2})->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
