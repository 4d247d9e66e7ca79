#include "qapmap/mapping.hpp"

#include <numeric>

namespace qapmap {

Mapping Mapping::identity(int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative mapping size");
  Mapping m;
  m.proc_to_pe_.resize(n);
  m.pe_to_proc_.resize(n);
  std::iota(m.proc_to_pe_.begin(), m.proc_to_pe_.end(), 0);
  std::iota(m.pe_to_proc_.begin(), m.pe_to_proc_.end(), 0);
  return m;
}

Mapping Mapping::from_proc_to_pe(std::vector<int> proc_to_pe) {
  const int n = static_cast<int>(proc_to_pe.size());
  Mapping m;
  m.pe_to_proc_.assign(n, -1);
  for (int u = 0; u < n; ++u) {
    const int p = proc_to_pe[u];
    if (p < 0 || p >= n)
      throw Error(ErrorCode::PeOutOfRange, "pe index out of range");
    if (m.pe_to_proc_[p] != -1)
      throw Error(ErrorCode::DuplicatePe, "two processes mapped to one pe");
    m.pe_to_proc_[p] = u;
  }
  m.proc_to_pe_ = std::move(proc_to_pe);
  return m;
}

void Mapping::swap_procs(int u, int v) {
  const int n = size();
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw Error(ErrorCode::IndexOutOfRange, "process index out of range");
  const int pu = proc_to_pe_[u];
  const int pv = proc_to_pe_[v];
  proc_to_pe_[u] = pv;
  proc_to_pe_[v] = pu;
  pe_to_proc_[pu] = v;
  pe_to_proc_[pv] = u;
}

}  // namespace qapmap
