#include <doctest.h>

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "qapmap/construct.hpp"
#include "qapmap/error.hpp"
#include "qapmap/local_search.hpp"
#include "qapmap/objective.hpp"
#include "qapmap/rng.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace qapmap;
using testutil::error_code_of;

namespace {

struct SearchRun {
  Mapping m;
  ContribTable ct;
  SearchStats stats;
};

SearchRun run(const WeightedGraph& g, const HierarchyTopology& t, Mapping start,
              SearchConfig cfg, const DenseQap* dense = nullptr) {
  SearchRun r{std::move(start), {}, {}};
  r.ct = evaluate_full(g, t, r.m);
  r.stats = run_search(g, t, r.m, r.ct, cfg, dense);
  return r;
}

SearchConfig n2_cfg() { return {}; }

SearchConfig np_cfg(int block_size) {
  SearchConfig cfg;
  cfg.neighborhood = Neighborhood::Np;
  cfg.block_size = block_size;
  return cfg;
}

SearchConfig ncd_cfg(int d, uint64_t seed = 0) {
  SearchConfig cfg;
  cfg.neighborhood = Neighborhood::Ncd;
  cfg.d = d;
  cfg.seed = seed;
  return cfg;
}

// no pair of processes may admit a strictly improving swap
void check_pairwise_optimal(const WeightedGraph& g, const HierarchyTopology& t,
                            const Mapping& m) {
  for (int u = 0; u < g.n; ++u) {
    for (int v = u + 1; v < g.n; ++v) {
      REQUIRE(swap_gain(g, t, m, u, v) <= 0.0);
    }
  }
}

}  // namespace

TEST_CASE("the cyclic scan solves the cross pair fixture from identity") {
  const WeightedGraph g = testutil::f2_graph();
  const HierarchyTopology t = testutil::topo22();
  const SearchRun r = run(g, t, Mapping::identity(4), n2_cfg());
  CHECK(r.ct.total == 20.0);
  CHECK(r.stats.swaps >= 1);
  CHECK(r.ct.total == evaluate_full(g, t, r.m).total);
  check_pairwise_optimal(g, t, r.m);
}

TEST_CASE("the cyclic scan leaves the path optimum untouched") {
  const WeightedGraph g = testutil::f1_graph();
  const HierarchyTopology t = testutil::topo22();
  const SearchRun r = run(g, t, Mapping::identity(4), n2_cfg());
  CHECK(r.ct.total == 24.0);
  CHECK(r.stats.swaps == 0);
  CHECK(r.m == Mapping::identity(4));
}

TEST_CASE("narrow index blocks cannot fix the cross pair fixture") {
  const WeightedGraph g = testutil::f2_graph();
  const HierarchyTopology t = testutil::topo22();
  // blocks {0,1} and {2,3} in PE space; the improving pairs are cross-block
  const SearchRun r = run(g, t, Mapping::identity(4), np_cfg(2));
  CHECK(r.ct.total == 200.0);
  CHECK(r.stats.swaps == 0);
}

TEST_CASE("a full-width block makes the pruned scan equal the quadratic one") {
  const WeightedGraph g = testutil::f2_graph();
  const HierarchyTopology t = testutil::topo22();
  const SearchRun r = run(g, t, Mapping::identity(4), np_cfg(4));
  CHECK(r.ct.total == 20.0);
  check_pairwise_optimal(g, t, r.m);
}

TEST_CASE("pairs inside one innermost group are never inspected") {
  // one group of 4 spans the whole machine: every pair is dropped
  const WeightedGraph g = testutil::random_connected_graph(4, 2, 3);
  const HierarchyTopology flat({4}, {1.0});
  const SearchRun r = run(g, flat, Mapping::identity(4), np_cfg(4));
  CHECK(r.stats.swaps == 0);
  CHECK(r.stats.pairs_inspected == 0);
}

TEST_CASE("edge swaps alone cannot repair the cross pair fixture") {
  const WeightedGraph g = testutil::f2_graph();
  const HierarchyTopology t = testutil::topo22();
  const SearchRun r = run(g, t, Mapping::identity(4), ncd_cfg(1));
  CHECK(r.ct.total == 200.0);
  CHECK(r.stats.swaps == 0);
}

TEST_CASE("a wider hop radius cannot bridge communication components") {
  // the components {0,2} and {1,3} stay disjoint at every radius
  const WeightedGraph g = testutil::f2_graph();
  const HierarchyTopology t = testutil::topo22();
  CHECK(enumerate_pairs_within(g, 2) == enumerate_pairs_within(g, 1));
  const SearchRun r = run(g, t, Mapping::identity(4), ncd_cfg(2));
  CHECK(r.ct.total == 200.0);
  CHECK(r.stats.swaps == 0);
}

TEST_CASE("an edge swap repairs the shuffled path start") {
  const WeightedGraph g = testutil::f1_graph();
  const HierarchyTopology t = testutil::topo22();
  const Mapping start = Mapping::from_proc_to_pe({0, 2, 1, 3});
  CHECK(evaluate_full(g, t, start).total == 60.0);
  CHECK(swap_gain(g, t, start, 1, 2) == 36.0);

  // the first accepted move decides the endpoint: (1,2) reaches the global
  // optimum 24, while (0,1) or (2,3) land on the genuine hop-1 optimum 42
  bool reached_optimum = false;
  for (uint64_t seed = 0; seed < 8; ++seed) {
    const SearchRun r = run(g, t, start, ncd_cfg(1, seed));
    CHECK(r.stats.swaps == 1);
    CHECK((r.ct.total == 24.0 || r.ct.total == 42.0));
    for (const auto& [u, v] : enumerate_pairs_within(g, 1)) {
      REQUIRE(swap_gain(g, t, r.m, u, v) <= 0.0);
    }
    if (r.ct.total == 24.0) reached_optimum = true;
  }
  CHECK(reached_optimum);
}

TEST_CASE("pair enumeration on the path grows with the radius") {
  const WeightedGraph p4 = testutil::path_graph(4);
  using Pairs = std::vector<std::pair<int, int>>;

  Pairs d1 = enumerate_pairs_within(p4, 1);
  std::sort(d1.begin(), d1.end());
  CHECK(d1 == Pairs{{0, 1}, {1, 2}, {2, 3}});

  Pairs d2 = enumerate_pairs_within(p4, 2);
  std::sort(d2.begin(), d2.end());
  CHECK(d2 == Pairs{{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});

  Pairs d3 = enumerate_pairs_within(p4, 3);
  std::sort(d3.begin(), d3.end());
  CHECK(d3 == Pairs{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("pair sets nest and saturate at the diameter") {
  for (uint64_t seed = 1; seed <= 4; ++seed) {
    const WeightedGraph g = testutil::random_connected_graph(24, 10, seed);
    const std::vector<int> hops = testutil::oracle_hop_matrix(g);

    std::set<std::pair<int, int>> prev;
    int diameter = 0;
    for (int u = 0; u < g.n; ++u) {
      for (int v = 0; v < g.n; ++v) {
        if (hops[u * g.n + v] < testutil::kUnreachable) {
          diameter = std::max(diameter, hops[u * g.n + v]);
        }
      }
    }
    for (int d = 1; d <= std::min(diameter, 6); ++d) {
      const auto pairs = enumerate_pairs_within(g, d);
      const std::set<std::pair<int, int>> cur(pairs.begin(), pairs.end());
      for (const auto& pq : prev) REQUIRE(cur.count(pq) == 1);
      for (const auto& [u, v] : cur) {
        REQUIRE(u < v);
        REQUIRE(hops[u * g.n + v] <= d);
      }
      prev = cur;
    }
    const auto sat = enumerate_pairs_within(g, diameter);
    int64_t reachable_pairs = 0;
    for (int u = 0; u < g.n; ++u) {
      for (int v = u + 1; v < g.n; ++v) {
        if (hops[u * g.n + v] < testutil::kUnreachable) ++reachable_pairs;
      }
    }
    REQUIRE(static_cast<int64_t>(sat.size()) == reachable_pairs);
  }
}

TEST_CASE("every neighborhood descends monotonically and keeps the table exact") {
  const WeightedGraph g = testutil::random_connected_graph(64, 128, 71);
  const HierarchyTopology t({4, 16}, {1.0, 10.0});
  const Mapping start = construct_random(64, 5);
  const double before = evaluate_full(g, t, start).total;

  for (const SearchConfig& cfg :
       {n2_cfg(), np_cfg(16), ncd_cfg(1, 7), ncd_cfg(3, 7)}) {
    const SearchRun r = run(g, t, start, cfg);
    CHECK(r.ct.total <= before);
    const ContribTable fresh = evaluate_full(g, t, r.m);
    CHECK(r.ct.total == fresh.total);
    CHECK(r.ct.contrib == fresh.contrib);
  }
}

TEST_CASE("termination leaves no positive gain in the searched neighborhood") {
  const WeightedGraph g = testutil::random_connected_graph(32, 64, 81);
  const HierarchyTopology t({4, 8}, {1.0, 10.0});
  const Mapping start = construct_random(32, 9);

  const SearchRun n2 = run(g, t, start, n2_cfg());
  check_pairwise_optimal(g, t, n2.m);

  const SearchRun np = run(g, t, start, np_cfg(8));
  for (int base = 0; base < 32; base += 8) {
    for (int p = base; p < base + 8; ++p) {
      for (int q = p + 1; q < base + 8; ++q) {
        REQUIRE(swap_gain(g, t, np.m, np.m.proc_on(p), np.m.proc_on(q)) <= 0.0);
      }
    }
  }

  const SearchRun nc = run(g, t, start, ncd_cfg(2, 3));
  for (const auto& [u, v] : enumerate_pairs_within(g, 2)) {
    REQUIRE(swap_gain(g, t, nc.m, u, v) <= 0.0);
  }
}

TEST_CASE("the slow gain path lands on the identical permutation") {
  const WeightedGraph g = testutil::random_connected_graph(48, 96, 91);
  const HierarchyTopology t({4, 12}, {1.0, 10.0});
  const DenseQap dense = DenseQap::build(g, t);
  const Mapping start = construct_mueller_merbach(g, t);

  SearchConfig fast = np_cfg(12);
  SearchConfig slow = np_cfg(12);
  slow.use_slow_gain = true;

  const SearchRun rf = run(g, t, start, fast);
  const SearchRun rs = run(g, t, start, slow, &dense);
  CHECK(rf.m == rs.m);
  CHECK(rf.ct.total == rs.ct.total);
  CHECK(rf.stats.swaps == rs.stats.swaps);

  // the quadratic scan agrees too
  SearchConfig n2s = n2_cfg();
  n2s.use_slow_gain = true;
  const SearchRun qf = run(g, t, start, n2_cfg());
  const SearchRun qs = run(g, t, start, n2s, &dense);
  CHECK(qf.m == qs.m);
  CHECK(qf.ct.total == qs.ct.total);
}

TEST_CASE("streamed pair generation matches the materialized list") {
  const WeightedGraph g = testutil::random_connected_graph(40, 60, 99);
  const HierarchyTopology t({4, 10}, {1.0, 10.0});
  const Mapping start = construct_random(40, 2);

  SearchConfig cached = ncd_cfg(2, 13);
  SearchConfig streamed = ncd_cfg(2, 13);
  streamed.pair_cache_limit = 0;  // force per-pass regeneration

  const SearchRun rc = run(g, t, start, cached);
  const SearchRun rs = run(g, t, start, streamed);
  // shuffles differ, so only termination quality is comparable
  CHECK(rs.ct.total == evaluate_full(g, t, rs.m).total);
  for (const auto& [u, v] : enumerate_pairs_within(g, 2)) {
    REQUIRE(swap_gain(g, t, rs.m, u, v) <= 0.0);
    REQUIRE(swap_gain(g, t, rc.m, u, v) <= 0.0);
  }
}

TEST_CASE("a pass cap stops the search early") {
  const WeightedGraph g = testutil::random_connected_graph(64, 128, 101);
  const HierarchyTopology t({4, 16}, {1.0, 10.0});
  SearchConfig cfg = n2_cfg();
  cfg.max_passes = 1;
  const SearchRun r = run(g, t, construct_random(64, 4), cfg);
  CHECK(r.stats.passes <= 1);
  CHECK(r.ct.total == evaluate_full(g, t, r.m).total);
}

TEST_CASE("configuration errors are rejected") {
  const WeightedGraph g = testutil::f2_graph();
  const HierarchyTopology t = testutil::topo22();
  Mapping m = Mapping::identity(4);
  ContribTable ct = evaluate_full(g, t, m);

  CHECK(error_code_of([&] { run_search(g, t, m, ct, ncd_cfg(0)); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_code_of([&] { run_search(g, t, m, ct, np_cfg(5)); }) ==
        ErrorCode::InvalidArgument);

  SearchConfig slow_missing_dense = n2_cfg();
  slow_missing_dense.use_slow_gain = true;
  CHECK(error_code_of([&] { run_search(g, t, m, ct, slow_missing_dense); }) ==
        ErrorCode::InvalidArgument);

  Mapping wrong = Mapping::identity(8);
  ContribTable wrong_ct;
  CHECK(error_code_of([&] { run_search(g, t, wrong, wrong_ct, n2_cfg()); }) ==
        ErrorCode::SizeMismatch);
}
