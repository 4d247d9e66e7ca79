#pragma once

#include <cstdint>
#include <vector>

#include "qapmap/error.hpp"
#include "qapmap/topology.hpp"

namespace qapmap {

/// PEs above this count refuse dense materialization by default; callers
/// must use the online oracle instead.
inline constexpr int64_t kDefaultDistanceMatrixCap = int64_t{1} << 15;

/// Dense n x n distance matrix: the explicit baseline the online oracle
/// replaces. Kept for cross-checking and for the slow-gain experiments.
struct DistanceMatrix {
  int64_t n = 0;
  std::vector<double> values;  // row-major

  double at(int64_t p, int64_t q) const { return values[p * n + q]; }
};

namespace detail {

/// Core of pe_distance without the range check, for hot loops whose inputs
/// are already validated (mapping entries are PE indices by construction).
/// Power-of-two group sizes compare via shifted xor; the rest divide.
inline double pe_distance_unchecked(const HierarchyTopology& t, int64_t p, int64_t q) {
  if (p == q) return 0.0;
  const int64_t x = p ^ q;
  const int k = t.levels();
  for (int i = 0; i < k - 1; ++i) {
    const int s = t.group_shift(i);
    const bool together =
        s >= 0 ? (x >> s) == 0 : p / t.group_size(i) == q / t.group_size(i);
    if (together) return t.level_distance(i);
  }
  return t.level_distance(k - 1);  // the outermost level spans all PEs
}

}  // namespace detail

/// Distance between PEs p and q: 0 if equal, otherwise the distance of the
/// innermost hierarchy level on which they share a group. A query costs O(k)
/// with k the (small) number of hierarchy levels.
inline double pe_distance(const HierarchyTopology& t, int64_t p, int64_t q) {
  if (p < 0 || q < 0 || p >= t.n_pes() || q >= t.n_pes())
    throw Error(ErrorCode::IndexOutOfRange, "PE index out of range");
  return detail::pe_distance_unchecked(t, p, q);
}

/// Materializes the full matrix, pe_distance applied pointwise. Throws
/// MatrixCapExceeded when n_pes exceeds `cap`.
DistanceMatrix materialize_matrix(const HierarchyTopology& t,
                                  int64_t cap = kDefaultDistanceMatrixCap);

}  // namespace qapmap
