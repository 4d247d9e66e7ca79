#include "qapmap/topology.hpp"

namespace qapmap {

HierarchyTopology::HierarchyTopology(std::vector<int> factors,
                                     std::vector<double> level_distances)
    : factors_(std::move(factors)), dist_(std::move(level_distances)) {
  if (factors_.empty())
    throw Error(ErrorCode::InvalidArgument, "hierarchy needs at least one level");
  if (factors_.size() != dist_.size())
    throw Error(ErrorCode::CountMismatch, "factor and distance counts differ");
  for (int f : factors_) {
    if (f < 1) throw Error(ErrorCode::NonpositiveFactor, "hierarchy factor must be >= 1");
  }
  double prev = 0.0;
  for (double d : dist_) {
    if (!(d > prev))
      throw Error(ErrorCode::NonIncreasingDistances,
                  "level distances must be positive and strictly increasing");
    prev = d;
  }
  group_size_.resize(factors_.size());
  shift_.resize(factors_.size());
  int64_t prod = 1;
  for (size_t i = 0; i < factors_.size(); ++i) {
    prod *= factors_[i];
    group_size_[i] = prod;
    if ((prod & (prod - 1)) == 0) {
      int s = 0;
      while ((int64_t{1} << s) < prod) ++s;
      shift_[i] = s;
    } else {
      shift_[i] = -1;
    }
  }
}

}  // namespace qapmap
