#pragma once

#include <cstdint>

#include "qapmap/graph.hpp"

namespace qapmap {

/// Random geometric graph: 2^exponent points uniform in the unit square,
/// an edge between points with Euclidean distance below
/// 0.55 * sqrt(ln n / n), unit weights. Neighbor candidates come from a
/// uniform grid with cell width equal to the radius, so generation is near
/// linear in n. Deterministic per seed.
WeightedGraph gen_rgg(int exponent, uint64_t seed);

/// rows x cols 4-neighbor grid, unit weights, row-major vertex ids.
WeightedGraph gen_grid(int rows, int cols);

}  // namespace qapmap
