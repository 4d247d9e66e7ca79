#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qapmap/graph.hpp"

namespace qapmap {

/// A k-way partition of a graph's vertex set. block_sizes counts vertices
/// per block (the balance unit throughout: every partition call in this
/// library is made on a graph whose vertices all carry equal weight, so
/// vertex-count balance and vertex-weight balance coincide).
struct Partition {
  int k = 0;
  std::vector<int> block_of;
  std::vector<int64_t> block_sizes;

  bool exactly_balanced() const {
    if (block_sizes.empty()) return false;
    const int64_t target = static_cast<int64_t>(block_of.size()) / k;
    for (int64_t s : block_sizes) {
      if (s != target) return false;
    }
    return true;
  }
};

/// Total weight of edges crossing between different blocks (each undirected
/// edge counted once).
double cut_weight(const WeightedGraph& g, const Partition& p);

/// Perfectly balanced k-way partitioning: every block receives exactly n/k
/// vertices, the total crossing weight is minimized heuristically.
/// Deterministic for a given seed. Multilevel pipeline: heavy-edge-matching
/// coarsening, greedy block growing from pseudo-peripheral starts on the
/// coarsest graph, then per level a repair pass toward the exact block sizes
/// followed by balance-preserving pairwise swap refinement.
///
/// Requires 1 <= k <= n and k | n; throws DivisibilityViolation otherwise.
Partition partition_balanced(const WeightedGraph& g, int k, uint64_t seed);

/// Contracts each block to a single vertex. Coarse vertex weights are the
/// sums of the constituent vertex weights; parallel edges arising from the
/// contraction are merged by adding their weights; intra-block edges vanish.
/// The coarse edge weight between blocks A and B therefore equals the total
/// cut weight between A and B in the fine graph.
WeightedGraph contract(const WeightedGraph& g, const Partition& p);

/// Swap-only boundary refinement: never increases the cut, preserves the
/// exact balance of its input by construction (vertices are only exchanged
/// pairwise between blocks). Throws Unbalanced if p is not exactly balanced.
Partition refine_balanced(const WeightedGraph& g, Partition p, uint64_t seed);

/// Partitioner handle accepted by the multilevel constructors and the model
/// builder, so tiny-scale tests can substitute an exhaustive optimal
/// partitioner for the heuristic one.
using PartitionerFn = std::function<Partition(const WeightedGraph&, int, uint64_t)>;

/// The library's own partitioner as a handle.
PartitionerFn default_partitioner();

}  // namespace qapmap
