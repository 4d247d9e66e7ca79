#include <doctest.h>

#include <algorithm>
#include <map>
#include <vector>

#include "qapmap/construct.hpp"
#include "qapmap/error.hpp"
#include "qapmap/objective.hpp"
#include "qapmap/rng.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace qapmap;
using testutil::error_code_of;

namespace {

double score(const WeightedGraph& g, const HierarchyTopology& t, const Mapping& m) {
  return evaluate_full(g, t, m).total;
}

// disjoint union of cliques with one weight per clique
WeightedGraph clique_union(int cliques, int size, const std::vector<double>& weights) {
  std::vector<testutil::Edge> edges;
  for (int c = 0; c < cliques; ++c) {
    for (int a = 0; a < size; ++a) {
      for (int b = a + 1; b < size; ++b) {
        edges.push_back({c * size + a, c * size + b, weights[c]});
      }
    }
  }
  return testutil::from_edges(cliques * size, edges);
}

}  // namespace

TEST_CASE("identity places process i on PE i") {
  CHECK(construct_identity(4).proc_to_pe() == std::vector<int>{0, 1, 2, 3});
  CHECK(construct_identity(1).proc_to_pe() == std::vector<int>{0});
}

TEST_CASE("random mappings are reproducible permutations") {
  const Mapping a = construct_random(40, 6);
  CHECK(a == construct_random(40, 6));
  CHECK(!(a == construct_random(40, 7)));
  std::vector<int> sorted = a.proc_to_pe();
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 40; ++i) CHECK(sorted[i] == i);
  CHECK(construct_random(1, 3).proc_to_pe() == std::vector<int>{0});
}

TEST_CASE("random mappings hit every permutation about equally often") {
  std::map<std::vector<int>, int> counts;
  std::vector<int> perm = {0, 1, 2, 3};
  do {
    counts[perm] = 0;
  } while (std::next_permutation(perm.begin(), perm.end()));
  REQUIRE(counts.size() == 24);

  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    ++counts.at(construct_random(4, 50000 + i).proc_to_pe());
  }
  // 3 sigma around draws/24 under the binomial for one cell
  const double mean = draws / 24.0;
  const double sigma = std::sqrt(draws * (1.0 / 24.0) * (23.0 / 24.0));
  for (const auto& [p, c] : counts) {
    CHECK(c > mean - 3 * sigma);
    CHECK(c < mean + 3 * sigma);
  }
}

TEST_CASE("the distance-sum greedy solves the path fixture") {
  const Mapping m = construct_mueller_merbach(testutil::f1_graph(), testutil::topo22());
  CHECK(m.proc_to_pe() == std::vector<int>{1, 0, 2, 3});
  CHECK(score(testutil::f1_graph(), testutil::topo22(), m) == 24.0);

  // brute force confirms 24 is the optimum
  const auto dmat = testutil::oracle_distance_matrix({2, 2}, {1.0, 10.0});
  CHECK(testutil::brute_force_optimum(testutil::f1_graph(), dmat).best == 24.0);
}

TEST_CASE("the heaviest communicator is seeded onto the lowest PE") {
  // star: all PEs tie on the distance row sum, the center has volume 3
  const WeightedGraph star =
      testutil::from_edges(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  const Mapping m = construct_mueller_merbach(star, testutil::topo22());
  CHECK(m.pe_of(0) == 0);
}

TEST_CASE("greedy construction of a single process") {
  const WeightedGraph lone = testutil::from_edges(1, {});
  const HierarchyTopology t({1}, {1.0});
  CHECK(construct_mueller_merbach(lone, t).proc_to_pe() == std::vector<int>{0});
  CHECK(construct_greedy_all_c(lone, t).proc_to_pe() == std::vector<int>{0});
}

TEST_CASE("the communication-scaled greedy solves the cross pair fixture") {
  const Mapping m = construct_greedy_all_c(testutil::f2_graph(), testutil::topo22());
  // after process 0 takes PE 0, process 2 minimizes 5 * dist(c, 0)
  CHECK(m.pe_of(2) == 1);
  CHECK(score(testutil::f2_graph(), testutil::topo22(), m) == 20.0);

  const auto dmat = testutil::oracle_distance_matrix({2, 2}, {1.0, 10.0});
  CHECK(testutil::brute_force_optimum(testutil::f2_graph(), dmat).best == 20.0);
}

TEST_CASE("the scaled greedy is no worse than the distance greedy on the path") {
  const WeightedGraph g = testutil::f1_graph();
  const HierarchyTopology t = testutil::topo22();
  const double gac = score(g, t, construct_greedy_all_c(g, t));
  const double mm = score(g, t, construct_mueller_merbach(g, t));
  CHECK(gac <= mm);
  CHECK(gac == 24.0);
}

TEST_CASE("uniform communication makes both greedies pick identically") {
  std::vector<testutil::Edge> edges;
  for (int a = 0; a < 6; ++a) {
    for (int b = a + 1; b < 6; ++b) edges.push_back({a, b, 3.0});
  }
  const WeightedGraph k6 = testutil::from_edges(6, edges);
  const HierarchyTopology t({2, 3}, {1.0, 10.0});
  CHECK(construct_greedy_all_c(k6, t) == construct_mueller_merbach(k6, t));
}

TEST_CASE("recursive splitting solves both fixtures") {
  const HierarchyTopology t = testutil::topo22();

  const Mapping m1 = construct_top_down(testutil::f1_graph(), t, 1);
  CHECK(score(testutil::f1_graph(), t, m1) == 24.0);

  const Mapping m2 = construct_top_down(testutil::f2_graph(), t, 1);
  CHECK(score(testutil::f2_graph(), t, m2) == 20.0);
  // the zero-cut split keeps each communication component in one group
  CHECK(m2.pe_of(0) / 2 == m2.pe_of(2) / 2);
  CHECK(m2.pe_of(1) / 2 == m2.pe_of(3) / 2);
}

TEST_CASE("blockwise contraction solves both fixtures") {
  const HierarchyTopology t = testutil::topo22();

  const Mapping m1 = construct_bottom_up(testutil::f1_graph(), t, 1);
  CHECK(score(testutil::f1_graph(), t, m1) == 24.0);

  const Mapping m2 = construct_bottom_up(testutil::f2_graph(), t, 1);
  CHECK(score(testutil::f2_graph(), t, m2) == 20.0);
  CHECK(m2.pe_of(0) / 2 == m2.pe_of(2) / 2);
  CHECK(m2.pe_of(1) / 2 == m2.pe_of(3) / 2);
}

TEST_CASE("a flat hierarchy makes every mapping cost-equivalent") {
  const WeightedGraph g = testutil::f1_graph();
  const HierarchyTopology flat({4}, {5.0});
  const double identity_j = score(g, flat, construct_identity(4));
  CHECK(identity_j == 30.0);
  CHECK(score(g, flat, construct_top_down(g, flat, 3)) == identity_j);
  CHECK(score(g, flat, construct_bottom_up(g, flat, 3)) == identity_j);
}

TEST_CASE("disjoint cliques matching the innermost groups map optimally") {
  // optimum: every clique inside one group, J = 2 * d_1 * total clique weight
  const WeightedGraph pairs = clique_union(4, 2, {3.0, 7.0, 2.0, 5.0});
  const HierarchyTopology t24({2, 4}, {1.0, 10.0});
  CHECK(score(pairs, t24, construct_top_down(pairs, t24, 1)) == 34.0);
  CHECK(score(pairs, t24, construct_bottom_up(pairs, t24, 1)) == 34.0);

  const WeightedGraph triangles = clique_union(3, 3, {1.0, 2.0, 3.0});
  const HierarchyTopology t33({3, 3}, {1.0, 10.0});
  CHECK(score(triangles, t33, construct_top_down(triangles, t33, 1)) == 36.0);
  CHECK(score(triangles, t33, construct_bottom_up(triangles, t33, 1)) == 36.0);
}

TEST_CASE("multilevel constructors are deterministic per seed") {
  const WeightedGraph g = testutil::random_connected_graph(64, 96, 55);
  const HierarchyTopology t({4, 4, 4}, {1.0, 10.0, 100.0});
  CHECK(construct_top_down(g, t, 12) == construct_top_down(g, t, 12));
  CHECK(construct_bottom_up(g, t, 12) == construct_bottom_up(g, t, 12));
}

TEST_CASE("an injected exhaustive partitioner reaches the brute force optimum") {
  const HierarchyTopology t = testutil::topo22();
  const Mapping td =
      construct_top_down(testutil::f2_graph(), t, 1, testutil::exhaustive_partitioner);
  CHECK(score(testutil::f2_graph(), t, td) == 20.0);
  const Mapping bu =
      construct_bottom_up(testutil::f2_graph(), t, 1, testutil::exhaustive_partitioner);
  CHECK(score(testutil::f2_graph(), t, bu) == 20.0);
}

TEST_CASE("constructors reject size mismatches") {
  const HierarchyTopology t8({2, 2, 2}, {1.0, 2.0, 3.0});
  const WeightedGraph g = testutil::f1_graph();
  CHECK(error_code_of([&] { construct_mueller_merbach(g, t8); }) == ErrorCode::SizeMismatch);
  CHECK(error_code_of([&] { construct_greedy_all_c(g, t8); }) == ErrorCode::SizeMismatch);
  CHECK(error_code_of([&] { construct_top_down(g, t8, 1); }) == ErrorCode::SizeMismatch);
  CHECK(error_code_of([&] { construct_bottom_up(g, t8, 1); }) == ErrorCode::SizeMismatch);
}
