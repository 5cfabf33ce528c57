#include <benchmark/benchmark.h>

#include "apxkit/approx.hpp"
#include "apxkit/harness.hpp"
#include "apxkit/lp.hpp"
#include "apxkit/oracles.hpp"

namespace {

apx::CorpusSpec one(const char* text) {
  apx::CorpusSpec spec = apx::parse_corpus_spec(text);
  spec.count = 1;
  return spec;
}

void BM_OptMaxSat(benchmark::State& state) {
  apx::CorpusSpec spec = one("m=40,width=3");
  spec.num_vars = static_cast<int>(state.range(0));
  apx::CnfFormula formula = apx::gen_random_cnf(spec)[0];
  for (auto _ : state) {
    auto result = apx::opt_maxsat(formula);
    benchmark::DoNotOptimize(result.value);
  }
}
BENCHMARK(BM_OptMaxSat)->Arg(12)->Arg(16)->Arg(20);

void BM_OptMaxCut(benchmark::State& state) {
  apx::CorpusSpec spec = one("e=30");
  spec.num_vertices = static_cast<int>(state.range(0));
  apx::MultiGraph graph = apx::gen_random_graph(spec)[0];
  for (auto _ : state) {
    auto result = apx::opt_maxcut(graph);
    benchmark::DoNotOptimize(result.value);
  }
}
BENCHMARK(BM_OptMaxCut)->Arg(12)->Arg(16);

void BM_MaxCutDerandomized(benchmark::State& state) {
  apx::CorpusSpec spec = one("");
  spec.num_vertices = static_cast<int>(state.range(0));
  spec.num_edges = 4 * spec.num_vertices;
  apx::MultiGraph graph = apx::gen_random_graph(spec)[0];
  for (auto _ : state) {
    auto result = apx::maxcut_derandomized(graph);
    benchmark::DoNotOptimize(result.value);
  }
}
BENCHMARK(BM_MaxCutDerandomized)->Arg(64)->Arg(256);

void BM_Christofides(benchmark::State& state) {
  apx::CorpusSpec spec = one("");
  spec.num_points = static_cast<int>(state.range(0));
  apx::MetricInstance metric = apx::gen_random_metric(spec)[0];
  for (auto _ : state) {
    auto result = apx::tsp_christofides(metric);
    benchmark::DoNotOptimize(result.value);
  }
}
BENCHMARK(BM_Christofides)->Arg(10)->Arg(14);

void BM_HeldKarp(benchmark::State& state) {
  apx::CorpusSpec spec = one("");
  spec.num_points = static_cast<int>(state.range(0));
  apx::MetricInstance metric = apx::gen_random_metric(spec)[0];
  for (auto _ : state) {
    auto result = apx::opt_tsp(metric);
    benchmark::DoNotOptimize(result.value);
  }
}
BENCHMARK(BM_HeldKarp)->Arg(10)->Arg(13);

void BM_CongestionLpSolve(benchmark::State& state) {
  apx::CorpusSpec spec = one("");
  spec.net_vertices = static_cast<int>(state.range(0));
  spec.net_edges = 2 * spec.net_vertices;
  spec.commodities = 4;
  apx::FlowNetwork net = apx::gen_random_network(spec)[0];
  apx::LpProblem lp = apx::build_congestion_lp(net);
  for (auto _ : state) {
    apx::LpSolution sol = apx::solve_lp(lp);
    benchmark::DoNotOptimize(sol.objective_value);
  }
}
BENCHMARK(BM_CongestionLpSolve)->Arg(10)->Arg(20)->Arg(30);

void BM_CongestionPipeline(benchmark::State& state) {
  apx::CorpusSpec spec = one("");
  spec.net_vertices = static_cast<int>(state.range(0));
  spec.net_edges = 2 * spec.net_vertices;
  spec.commodities = 4;
  apx::FlowNetwork net = apx::gen_random_network(spec)[0];
  apx::RoundingParams params{2, 20, 1};
  for (auto _ : state) {
    auto result = apx::congestion_round(net, params);
    benchmark::DoNotOptimize(result.lp_bound);
  }
}
BENCHMARK(BM_CongestionPipeline)->Arg(10)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
