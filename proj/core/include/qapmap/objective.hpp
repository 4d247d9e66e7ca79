#pragma once

#include <cstdint>
#include <vector>

#include "qapmap/distance.hpp"
#include "qapmap/graph.hpp"
#include "qapmap/mapping.hpp"
#include "qapmap/topology.hpp"

namespace qapmap {

/// Per-vertex objective contributions. contrib[u] is the share of J owned by
/// process u under the current mapping:
///
///   contrib[u] = sum over neighbors v of C_uv * dist(pe(u), pe(v))
///
/// and total == sum of all contrib entries at all times. J sums over ordered
/// pairs, so every undirected edge is counted once from each endpoint.
struct ContribTable {
  std::vector<double> contrib;
  double total = 0.0;
};

/// Full objective evaluation in O(n + m); also populates the table.
ContribTable evaluate_full(const WeightedGraph& g, const HierarchyTopology& t,
                           const Mapping& m);

/// Gain (J before minus J after) of hypothetically exchanging the PEs of u
/// and v. Touches only the adjacency of u and v. The state is not modified.
/// When u and v are adjacent the connecting edge keeps its distance (the
/// distance matrix is symmetric), so it is excluded from both scans.
double swap_gain(const WeightedGraph& g, const HierarchyTopology& t,
                 const Mapping& m, int u, int v);

/// Exchanges the PEs of u and v while maintaining the contribution table and
/// total in O(d_u + d_v): subtract the affected contributions from the
/// total, strip the connecting edge terms from each neighbor's contribution,
/// zero and rebuild the contributions of u and v after the swap while adding
/// the new edge terms back to the neighbors, then re-add all affected
/// contributions to the total.
void apply_swap_with_update(const WeightedGraph& g, const HierarchyTopology& t,
                            Mapping& m, ContribTable& ct, int u, int v);

/// Dense-matrix baseline: communication and distance both materialized as
/// full n x n matrices, objective evaluated in O(n^2) and swap gains in
/// O(n) by scanning the two affected rows. Produces values identical to the
/// sparse path; exists to measure what the sparse machinery saves.
struct DenseQap {
  int n = 0;
  std::vector<double> comm;  // row-major n x n
  DistanceMatrix dist;

  static DenseQap build(const WeightedGraph& g, const HierarchyTopology& t,
                        int64_t cap = kDefaultDistanceMatrixCap);

  double comm_at(int u, int v) const { return comm[static_cast<int64_t>(u) * n + v]; }

  /// O(n^2) objective over all ordered pairs.
  double evaluate(const Mapping& m) const;

  /// O(n) swap gain by scanning rows u and v of both matrices.
  double swap_gain(const Mapping& m, int u, int v) const;
};

}  // namespace qapmap
