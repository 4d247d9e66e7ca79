#pragma once

#include <cstdint>
#include <vector>

#include "qapmap/error.hpp"

namespace qapmap {

/// Description of a homogeneous hierarchical machine. factors[i] is the
/// number of level-i entities grouped into one level-(i+1) entity (cores per
/// processor, processors per node, ...); level_distance[i] is the
/// communication distance between two PEs whose first common subsystem is
/// level i. Distances must be strictly increasing. The full PE-to-PE
/// distance matrix is implied and never stored here.
class HierarchyTopology {
 public:
  /// Validates k >= 1, factors >= 1, strictly increasing positive distances.
  HierarchyTopology(std::vector<int> factors, std::vector<double> level_distances);

  int levels() const { return static_cast<int>(factors_.size()); }
  int factor(int i) const { return factors_[i]; }
  double level_distance(int i) const { return dist_[i]; }

  /// Prefix product a_1 * ... * a_{i+1}: the number of PEs in one level-i group.
  int64_t group_size(int i) const { return group_size_[i]; }

  /// log2(group_size(i)) when that size is a power of two, -1 otherwise.
  /// Lets distance queries use a shift instead of two divisions.
  int group_shift(int i) const { return shift_[i]; }

  int64_t n_pes() const { return group_size_.back(); }

  const std::vector<int>& factors() const { return factors_; }
  const std::vector<double>& level_distances() const { return dist_; }

 private:
  std::vector<int> factors_;
  std::vector<double> dist_;
  std::vector<int64_t> group_size_;
  std::vector<int> shift_;
};

}  // namespace qapmap
