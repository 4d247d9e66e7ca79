// Microbenchmarks for the hot paths: swap gains (delta vs dense scan), the
// delta update itself, distance queries, and full evaluation. All run on one
// desk-scale instance so numbers are comparable across revisions.

#include <benchmark/benchmark.h>

#include <vector>

#include "qapmap/construct.hpp"
#include "qapmap/distance.hpp"
#include "qapmap/harness.hpp"
#include "qapmap/local_search.hpp"
#include "qapmap/objective.hpp"
#include "qapmap/rng.hpp"

namespace {

using namespace qapmap;

struct Bench {
  ModelInstance model = make_rgg_model(1024, 1);
  HierarchyTopology topo = desk_topology(1024);
  DenseQap dense = DenseQap::build(model.graph, topo);
  DistanceMatrix dmat = materialize_matrix(topo);
  Mapping mapping = construct_mueller_merbach(model.graph, topo);
  std::vector<std::pair<int, int>> pairs;

  Bench() {
    Rng rng(7);
    for (int i = 0; i < 4096; ++i) {
      const int u = rng.next_int(model.graph.n);
      int v = rng.next_int(model.graph.n);
      while (v == u) v = rng.next_int(model.graph.n);
      pairs.emplace_back(u, v);
    }
  }
};

Bench& bench() {
  static Bench b;
  return b;
}

void BM_SwapGainDelta(benchmark::State& state) {
  Bench& b = bench();
  size_t i = 0;
  for (auto _ : state) {
    const auto [u, v] = b.pairs[i];
    benchmark::DoNotOptimize(swap_gain(b.model.graph, b.topo, b.mapping, u, v));
    i = (i + 1) % b.pairs.size();
  }
}
BENCHMARK(BM_SwapGainDelta);

void BM_SwapGainDenseScan(benchmark::State& state) {
  Bench& b = bench();
  size_t i = 0;
  for (auto _ : state) {
    const auto [u, v] = b.pairs[i];
    benchmark::DoNotOptimize(b.dense.swap_gain(b.mapping, u, v));
    i = (i + 1) % b.pairs.size();
  }
}
BENCHMARK(BM_SwapGainDenseScan);

void BM_ApplySwapWithUpdate(benchmark::State& state) {
  Bench& b = bench();
  Mapping m = b.mapping;
  ContribTable ct = evaluate_full(b.model.graph, b.topo, m);
  size_t i = 0;
  for (auto _ : state) {
    const auto [u, v] = b.pairs[i];
    apply_swap_with_update(b.model.graph, b.topo, m, ct, u, v);
    benchmark::DoNotOptimize(ct.total);
    i = (i + 1) % b.pairs.size();
  }
}
BENCHMARK(BM_ApplySwapWithUpdate);

void BM_PeDistanceDivision(benchmark::State& state) {
  Bench& b = bench();
  size_t i = 0;
  for (auto _ : state) {
    const auto [p, q] = b.pairs[i];
    benchmark::DoNotOptimize(pe_distance(b.topo, p, q));
    i = (i + 1) % b.pairs.size();
  }
}
BENCHMARK(BM_PeDistanceDivision);

void BM_PeDistanceMatrixLookup(benchmark::State& state) {
  Bench& b = bench();
  size_t i = 0;
  for (auto _ : state) {
    const auto [p, q] = b.pairs[i];
    benchmark::DoNotOptimize(b.dmat.at(p, q));
    i = (i + 1) % b.pairs.size();
  }
}
BENCHMARK(BM_PeDistanceMatrixLookup);

void BM_EvaluateFull(benchmark::State& state) {
  Bench& b = bench();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_full(b.model.graph, b.topo, b.mapping).total);
  }
}
BENCHMARK(BM_EvaluateFull);

}  // namespace

BENCHMARK_MAIN();
