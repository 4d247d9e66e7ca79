#pragma once

#include <cstdint>

#include "qapmap/graph.hpp"
#include "qapmap/mapping.hpp"
#include "qapmap/partition.hpp"
#include "qapmap/topology.hpp"

namespace qapmap {

/// Process i on PE i.
Mapping construct_identity(int n);

/// Uniform random permutation (seeded Fisher-Yates).
Mapping construct_random(int n, uint64_t seed);

/// Greedy construction: the seed step places the process with the largest
/// weighted degree on the PE with the smallest total-distance row sum. Each
/// following step assigns the unassigned process with the largest
/// communication sum to already-assigned processes onto the unassigned PE
/// with the smallest distance sum to already-assigned PEs. Ties break toward
/// the lowest index. O(n^2) overall.
Mapping construct_mueller_merbach(const CommGraph& g, const HierarchyTopology& t);

/// Like construct_mueller_merbach but the PE choice is linked to the process
/// being placed: the chosen process u goes to the unassigned PE c minimizing
/// sum over assigned v of C_uv * dist(c, pe(v)).
Mapping construct_greedy_all_c(const CommGraph& g, const HierarchyTopology& t);

/// Recursive splitting along the hierarchy from the outermost level inward:
/// partition into factor(k-1) perfectly balanced blocks, hand block b the
/// b-th consecutive PE range, recurse into each induced subgraph with the
/// next factor; groups of factor(0) processes receive consecutive ranks in
/// ascending process-index order.
Mapping construct_top_down(const CommGraph& g, const HierarchyTopology& t, uint64_t seed,
                           const PartitionerFn& partitioner = default_partitioner());

/// Builds the hierarchy from the innermost level outward: partition into
/// blocks of factor(0) vertices, contract, repeat with the next factor. The
/// recursion is then unwound: each coarse vertex receives a PE range sized
/// by the number of original processes beneath it, split among its children
/// in child-id order, down to single processes in ascending index order.
Mapping construct_bottom_up(const CommGraph& g, const HierarchyTopology& t, uint64_t seed,
                            const PartitionerFn& partitioner = default_partitioner());

}  // namespace qapmap
