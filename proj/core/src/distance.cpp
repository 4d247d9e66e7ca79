#include "qapmap/distance.hpp"

#include <string>

namespace qapmap {

DistanceMatrix materialize_matrix(const HierarchyTopology& t, int64_t cap) {
  const int64_t n = t.n_pes();
  if (n > cap)
    throw Error(ErrorCode::MatrixCapExceeded,
                "pe count " + std::to_string(n) + " exceeds matrix cap " +
                    std::to_string(cap));
  DistanceMatrix dm;
  dm.n = n;
  dm.values.assign(static_cast<size_t>(n) * n, 0.0);
  for (int64_t p = 0; p < n; ++p) {
    for (int64_t q = 0; q < n; ++q) {
      dm.values[p * n + q] = pe_distance(t, static_cast<int>(p), static_cast<int>(q));
    }
  }
  return dm;
}

}  // namespace qapmap
