#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qapmap/graph.hpp"
#include "qapmap/mapping.hpp"
#include "qapmap/objective.hpp"
#include "qapmap/topology.hpp"

namespace qapmap {

enum class Neighborhood {
  N2,   // all process pairs, cyclic scan
  Np,   // pairs inside consecutive PE-index blocks, cyclic scan
  Ncd,  // pairs within hop distance d in the communication graph, random order
};

struct SearchConfig {
  Neighborhood neighborhood = Neighborhood::N2;
  int d = 1;            // Ncd hop radius
  int block_size = 0;   // Np block width in PEs; 0 = max(2, n/64)
  uint64_t seed = 0;
  int64_t max_passes = 0;  // 0 = run until convergence
  bool use_slow_gain = false;
  // Ncd pair lists larger than this are regenerated per pass instead of
  // materialized; -1 = 64 * m.
  int64_t pair_cache_limit = -1;
};

struct SearchStats {
  int64_t swaps = 0;
  int64_t pairs_inspected = 0;  // candidate visits, including skips
  int64_t passes = 0;
  double wall_ms = 0.0;
};

/// Cyclic scan over all process pairs (i,j), i < j, performing every
/// strictly improving swap. Terminates once n(n-1)/2 consecutive
/// inspections found no improvement; the result is locally optimal under
/// arbitrary pairwise swaps.
SearchStats search_n2(const CommGraph& g, const HierarchyTopology& t, Mapping& m,
                      ContribTable& ct, const SearchConfig& cfg,
                      const DenseQap* dense = nullptr);

/// Pruned neighborhood: PE indices are cut into consecutive blocks of
/// cfg.block_size; only swaps between processes currently hosted inside the
/// same block are considered, and PE pairs sharing an innermost group are
/// dropped entirely (their swaps can never change the objective). Cyclic
/// scan as in search_n2.
SearchStats search_np(const CommGraph& g, const HierarchyTopology& t, Mapping& m,
                      ContribTable& ct, const SearchConfig& cfg,
                      const DenseQap* dense = nullptr);

/// Communication-graph neighborhood: candidate pairs are processes within
/// hop distance cfg.d of each other, visited in seeded random order
/// (reshuffled each pass); terminates after |pairs| consecutive unsuccessful
/// visits. Pairs currently sharing an innermost PE group are skipped (the
/// skip counts as an unsuccessful visit).
SearchStats search_ncd(const CommGraph& g, const HierarchyTopology& t, Mapping& m,
                       ContribTable& ct, const SearchConfig& cfg,
                       const DenseQap* dense = nullptr);

/// Dispatch on cfg.neighborhood.
SearchStats run_search(const CommGraph& g, const HierarchyTopology& t, Mapping& m,
                       ContribTable& ct, const SearchConfig& cfg,
                       const DenseQap* dense = nullptr);

/// All unordered process pairs {u,v} with BFS hop distance <= d, each
/// emitted once (u < v). Depth-limited BFS from every vertex.
std::vector<std::pair<int, int>> enumerate_pairs_within(const CommGraph& g, int d);

}  // namespace qapmap
