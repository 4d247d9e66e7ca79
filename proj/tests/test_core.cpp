#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "qapmap/error.hpp"
#include "qapmap/graph.hpp"
#include "qapmap/mapping.hpp"
#include "qapmap/rng.hpp"
#include "qapmap/topology.hpp"

#include "fixtures.hpp"

using namespace qapmap;
using testutil::error_code_of;

TEST_CASE("a path builds into a symmetric CSR graph") {
  const WeightedGraph g = testutil::path_graph(4);
  CHECK(g.n == 4);
  CHECK(g.m == 3);
  CHECK(g.xadj.size() == 5);
  CHECK(g.adj.size() == 6);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 2);
  CHECK(g.degree(3) == 1);
  CHECK(g.edge_weight(1, 2) == 1.0);
  CHECK(g.edge_weight(2, 1) == 1.0);
  CHECK(g.edge_weight(0, 3) == 0.0);
  CHECK(!g.has_edge(0, 2));
  CHECK(g.weighted_degree(1) == 2.0);
  CHECK(g.total_vertex_weight() == 4.0);
  CHECK(!validate_comm_graph(g).has_value());
}

TEST_CASE("adjacency lists come out sorted regardless of insertion order") {
  GraphBuilder b(4);
  b.add_edge(3, 0, 2.0);
  b.add_edge(0, 1, 5.0);
  b.add_edge(2, 0, 7.0);
  const WeightedGraph g = b.build();
  const std::vector<int> row0(g.adj.begin() + g.xadj[0], g.adj.begin() + g.xadj[1]);
  CHECK(row0 == std::vector<int>{1, 2, 3});
  CHECK(g.edge_weight(0, 2) == 7.0);
  CHECK(g.edge_weight(2, 0) == 7.0);
}

TEST_CASE("the builder rejects malformed edges") {
  GraphBuilder b(3);
  CHECK(error_code_of([&] { b.add_edge(1, 1); }) == ErrorCode::SelfLoop);
  CHECK(error_code_of([&] { b.add_edge(0, 1, 0.0); }) == ErrorCode::NonpositiveWeight);
  CHECK(error_code_of([&] { b.add_edge(0, 1, -2.0); }) == ErrorCode::NonpositiveWeight);
  CHECK(error_code_of([&] { b.add_edge(0, 3); }) == ErrorCode::IndexOutOfRange);
  CHECK(error_code_of([&] { b.add_edge(-1, 0); }) == ErrorCode::IndexOutOfRange);

  GraphBuilder dup(3);
  dup.add_edge(0, 1, 1.0);
  dup.add_edge(1, 0, 2.0);
  CHECK(error_code_of([&] { dup.build(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("graph validation names each violation class") {
  // hand-assembled CSR structures; the builder cannot produce these
  WeightedGraph asym;
  asym.n = 2;
  asym.m = 1;
  asym.xadj = {0, 1, 2};
  asym.adj = {1, 0};
  asym.ewgt = {5.0, 3.0};
  asym.vwgt = {1.0, 1.0};
  auto v = validate_comm_graph(asym);
  REQUIRE(v.has_value());
  CHECK(v->code == ErrorCode::AsymmetricEdge);

  WeightedGraph loop;
  loop.n = 3;
  loop.m = 1;
  loop.xadj = {0, 0, 0, 2};
  loop.adj = {2, 2};
  loop.ewgt = {1.0, 1.0};
  loop.vwgt = {1.0, 1.0, 1.0};
  v = validate_comm_graph(loop);
  REQUIRE(v.has_value());
  CHECK(v->code == ErrorCode::SelfLoop);

  WeightedGraph nonpos = testutil::path_graph(2);
  nonpos.ewgt = {0.0, 0.0};
  v = validate_comm_graph(nonpos);
  REQUIRE(v.has_value());
  CHECK(v->code == ErrorCode::NonpositiveWeight);

  WeightedGraph shortcount = testutil::path_graph(3);
  shortcount.m = 5;
  v = validate_comm_graph(shortcount);
  REQUIRE(v.has_value());
  CHECK(v->code == ErrorCode::EdgeCountMismatch);
}

TEST_CASE("induced subgraphs reindex and keep weights") {
  GraphBuilder b(4);
  b.add_edge(0, 1, 3.0);
  b.add_edge(1, 2, 4.0);
  b.add_edge(2, 3, 5.0);
  b.set_vertex_weight(2, 7.0);
  const WeightedGraph g = b.build();

  const WeightedGraph sub = induced_subgraph(g, {0, 1, 2});
  CHECK(sub.n == 3);
  CHECK(sub.m == 2);
  CHECK(sub.edge_weight(0, 1) == 3.0);
  CHECK(sub.edge_weight(1, 2) == 4.0);
  CHECK(sub.vwgt[2] == 7.0);

  const WeightedGraph sparse = induced_subgraph(g, {0, 2});
  CHECK(sparse.n == 2);
  CHECK(sparse.m == 0);

  // selection order defines the new ids
  const WeightedGraph flipped = induced_subgraph(g, {2, 1});
  CHECK(flipped.edge_weight(0, 1) == 4.0);
  CHECK(flipped.vwgt[0] == 7.0);
}

TEST_CASE("hierarchies validate factors and distances") {
  const HierarchyTopology t({4, 16}, {1.0, 10.0});
  CHECK(t.levels() == 2);
  CHECK(t.factor(0) == 4);
  CHECK(t.factor(1) == 16);
  CHECK(t.group_size(0) == 4);
  CHECK(t.group_size(1) == 64);
  CHECK(t.n_pes() == 64);
  CHECK(t.level_distance(0) == 1.0);
  CHECK(t.level_distance(1) == 10.0);

  const HierarchyTopology small({2, 2}, {1.0, 10.0});
  CHECK(small.n_pes() == 4);

  CHECK(error_code_of([] { HierarchyTopology t2({}, {}); }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] { HierarchyTopology t2({2, 2}, {1.0}); }) ==
        ErrorCode::CountMismatch);
  CHECK(error_code_of([] { HierarchyTopology t2({0, 2}, {1.0, 2.0}); }) ==
        ErrorCode::NonpositiveFactor);
  CHECK(error_code_of([] { HierarchyTopology t2({4, 16}, {10.0, 1.0}); }) ==
        ErrorCode::NonIncreasingDistances);
  // equal consecutive distances would make the pruned neighborhood ambiguous
  CHECK(error_code_of([] { HierarchyTopology t2({2, 2}, {1.0, 1.0}); }) ==
        ErrorCode::NonIncreasingDistances);
  CHECK(error_code_of([] { HierarchyTopology t2({2}, {-1.0}); }) ==
        ErrorCode::NonIncreasingDistances);
}

TEST_CASE("identity mapping and swaps") {
  Mapping m = Mapping::identity(4);
  CHECK(m.proc_to_pe() == std::vector<int>{0, 1, 2, 3});
  CHECK(Mapping::identity(1).proc_to_pe() == std::vector<int>{0});

  m.swap_procs(1, 2);
  CHECK(m.proc_to_pe() == std::vector<int>{0, 2, 1, 3});
  CHECK(m.proc_on(1) == 2);
  CHECK(m.proc_on(2) == 1);

  m.swap_procs(1, 2);
  CHECK(m == Mapping::identity(4));

  m.swap_procs(1, 2);
  m.swap_procs(0, 3);
  CHECK(m.proc_to_pe() == std::vector<int>{3, 2, 1, 0});

  CHECK(error_code_of([&] { m.swap_procs(0, 4); }) == ErrorCode::IndexOutOfRange);
  CHECK(error_code_of([&] { m.swap_procs(-1, 2); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("both mapping directions stay mutually inverse under random swaps") {
  Rng rng(99);
  Mapping m = Mapping::identity(32);
  for (int step = 0; step < 200; ++step) {
    const int u = rng.next_int(32);
    int v = rng.next_int(32);
    if (u == v) v = (v + 1) % 32;
    m.swap_procs(u, v);
    for (int i = 0; i < 32; ++i) {
      REQUIRE(m.proc_on(m.pe_of(i)) == i);
      REQUIRE(m.pe_of(m.proc_on(i)) == i);
    }
  }
}

TEST_CASE("mapping construction validates the permutation property") {
  const Mapping m = Mapping::from_proc_to_pe({1, 0, 2, 3});
  CHECK(m.pe_of(0) == 1);
  CHECK(m.proc_on(0) == 1);
  CHECK(m.proc_on(1) == 0);

  CHECK(error_code_of([] { Mapping::from_proc_to_pe({0, 0, 1, 2}); }) ==
        ErrorCode::DuplicatePe);
  CHECK(error_code_of([] { Mapping::from_proc_to_pe({0, 4, 1, 2}); }) ==
        ErrorCode::PeOutOfRange);
  CHECK(error_code_of([] { Mapping::from_proc_to_pe({0, -1, 1, 2}); }) ==
        ErrorCode::PeOutOfRange);
}

TEST_CASE("seeded rng reproduces its draws") {
  Rng a(7), b(7), c(8);
  const std::vector<int> pa = a.permutation(50);
  const std::vector<int> pb = b.permutation(50);
  CHECK(pa == pb);
  CHECK(pa != c.permutation(50));

  std::vector<int> sorted = pa;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) CHECK(sorted[i] == i);

  for (int i = 0; i < 1000; ++i) CHECK(a.next_below(13) < 13);
}
