#pragma once

#include <vector>

#include "qapmap/error.hpp"

namespace qapmap {

/// One-to-one assignment of processes to PEs. Both directions are kept in
/// sync: pe_of(u) is the PE hosting process u, proc_on(p) the process placed
/// on PE p. The two arrays are mutually inverse permutations at all times.
class Mapping {
 public:
  Mapping() = default;

  static Mapping identity(int n);

  /// Builds from the process->PE direction; validates the permutation
  /// property (duplicates and out-of-range entries are rejected).
  static Mapping from_proc_to_pe(std::vector<int> proc_to_pe);

  int size() const { return static_cast<int>(proc_to_pe_.size()); }

  int pe_of(int u) const { return proc_to_pe_[u]; }
  int proc_on(int p) const { return pe_to_proc_[p]; }

  /// Exchanges the PE assignments of processes u and v.
  void swap_procs(int u, int v);

  const std::vector<int>& proc_to_pe() const { return proc_to_pe_; }
  const std::vector<int>& pe_to_proc() const { return pe_to_proc_; }

  bool operator==(const Mapping& other) const { return proc_to_pe_ == other.proc_to_pe_; }

 private:
  std::vector<int> proc_to_pe_;
  std::vector<int> pe_to_proc_;
};

}  // namespace qapmap
