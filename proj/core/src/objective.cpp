#include "qapmap/objective.hpp"

#include <string>

#include "qapmap/error.hpp"

namespace qapmap {

namespace {

void check_sizes(const WeightedGraph& g, const HierarchyTopology& t, const Mapping& m) {
  if (m.size() != g.n)
    throw Error(ErrorCode::SizeMismatch, "mapping size " + std::to_string(m.size()) +
                                             " does not match graph order " +
                                             std::to_string(g.n));
  if (t.n_pes() != g.n)
    throw Error(ErrorCode::SizeMismatch, "hierarchy provides " +
                                             std::to_string(t.n_pes()) + " pes for " +
                                             std::to_string(g.n) + " processes");
}

}  // namespace

ContribTable evaluate_full(const WeightedGraph& g, const HierarchyTopology& t,
                           const Mapping& m) {
  check_sizes(g, t, m);
  ContribTable ct;
  ct.contrib.assign(g.n, 0.0);
  double total = 0.0;
  for (int u = 0; u < g.n; ++u) {
    const int pu = m.pe_of(u);
    double gu = 0.0;
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      gu += g.ewgt[e] * detail::pe_distance_unchecked(t, pu, m.pe_of(g.adj[e]));
    }
    ct.contrib[u] = gu;
    total += gu;
  }
  ct.total = total;
  return ct;
}

double swap_gain(const WeightedGraph& g, const HierarchyTopology& t, const Mapping& m,
                 int u, int v) {
  check_sizes(g, t, m);
  if (u < 0 || u >= g.n || v < 0 || v >= g.n)
    throw Error(ErrorCode::IndexOutOfRange, "process index out of range");
  if (u == v) return 0.0;
  const int pu = m.pe_of(u);
  const int pv = m.pe_of(v);
  double delta = 0.0;
  for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
    const int w = g.adj[e];
    if (w == v) continue;
    const int pw = m.pe_of(w);
    delta += g.ewgt[e] * (detail::pe_distance_unchecked(t, pu, pw) -
                          detail::pe_distance_unchecked(t, pv, pw));
  }
  for (int64_t e = g.xadj[v]; e < g.xadj[v + 1]; ++e) {
    const int w = g.adj[e];
    if (w == u) continue;
    const int pw = m.pe_of(w);
    delta += g.ewgt[e] * (detail::pe_distance_unchecked(t, pv, pw) -
                          detail::pe_distance_unchecked(t, pu, pw));
  }
  return 2.0 * delta;
}

void apply_swap_with_update(const WeightedGraph& g, const HierarchyTopology& t,
                            Mapping& m, ContribTable& ct, int u, int v) {
  check_sizes(g, t, m);
  if (static_cast<int>(ct.contrib.size()) != g.n)
    throw Error(ErrorCode::SizeMismatch, "contribution table size mismatch");
  if (u < 0 || u >= g.n || v < 0 || v >= g.n)
    throw Error(ErrorCode::IndexOutOfRange, "process index out of range");
  if (u == v) return;

  const int pu = m.pe_of(u);
  const int pv = m.pe_of(v);

  // strip everything u and v currently account for
  ct.total -= ct.contrib[u] + ct.contrib[v];
  for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
    const int w = g.adj[e];
    if (w == v) continue;  // the v side lives in contrib[v], already stripped
    const double term = g.ewgt[e] * detail::pe_distance_unchecked(t, pu, m.pe_of(w));
    ct.contrib[w] -= term;
    ct.total -= term;
  }
  for (int64_t e = g.xadj[v]; e < g.xadj[v + 1]; ++e) {
    const int w = g.adj[e];
    if (w == u) continue;
    const double term = g.ewgt[e] * detail::pe_distance_unchecked(t, pv, m.pe_of(w));
    ct.contrib[w] -= term;
    ct.total -= term;
  }

  m.swap_procs(u, v);

  // rebuild with the exchanged placements
  double gu = 0.0;
  const int npu = m.pe_of(u);
  for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
    const int w = g.adj[e];
    const double term = g.ewgt[e] * detail::pe_distance_unchecked(t, npu, m.pe_of(w));
    gu += term;
    if (w != v) {
      ct.contrib[w] += term;
      ct.total += term;
    }
  }
  double gv = 0.0;
  const int npv = m.pe_of(v);
  for (int64_t e = g.xadj[v]; e < g.xadj[v + 1]; ++e) {
    const int w = g.adj[e];
    const double term = g.ewgt[e] * detail::pe_distance_unchecked(t, npv, m.pe_of(w));
    gv += term;
    if (w != u) {
      ct.contrib[w] += term;
      ct.total += term;
    }
  }
  ct.contrib[u] = gu;
  ct.contrib[v] = gv;
  ct.total += gu + gv;
}

DenseQap DenseQap::build(const WeightedGraph& g, const HierarchyTopology& t, int64_t cap) {
  if (t.n_pes() != g.n)
    throw Error(ErrorCode::SizeMismatch, "hierarchy pe count does not match graph order");
  DenseQap q;
  q.n = g.n;
  q.comm.assign(static_cast<int64_t>(g.n) * g.n, 0.0);
  for (int u = 0; u < g.n; ++u) {
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      q.comm[static_cast<int64_t>(u) * g.n + g.adj[e]] = g.ewgt[e];
    }
  }
  q.dist = materialize_matrix(t, cap);
  return q;
}

double DenseQap::evaluate(const Mapping& m) const {
  if (m.size() != n)
    throw Error(ErrorCode::SizeMismatch, "mapping size does not match instance");
  double total = 0.0;
  for (int u = 0; u < n; ++u) {
    const int pu = m.pe_of(u);
    const double* row = comm.data() + static_cast<int64_t>(u) * n;
    for (int v = 0; v < n; ++v) {
      if (row[v] != 0.0) total += row[v] * dist.at(pu, m.pe_of(v));
    }
  }
  return total;
}

double DenseQap::swap_gain(const Mapping& m, int u, int v) const {
  if (m.size() != n)
    throw Error(ErrorCode::SizeMismatch, "mapping size does not match instance");
  if (u < 0 || u >= n || v < 0 || v >= n)
    throw Error(ErrorCode::IndexOutOfRange, "process index out of range");
  if (u == v) return 0.0;
  const int pu = m.pe_of(u);
  const int pv = m.pe_of(v);
  const double* cu = comm.data() + static_cast<int64_t>(u) * n;
  const double* cv = comm.data() + static_cast<int64_t>(v) * n;
  double delta = 0.0;
  for (int w = 0; w < n; ++w) {
    if (w == u || w == v) continue;
    const double diff = cu[w] - cv[w];
    if (diff == 0.0) continue;
    const int pw = m.pe_of(w);
    delta += diff * (dist.at(pu, pw) - dist.at(pv, pw));
  }
  return 2.0 * delta;
}

}  // namespace qapmap
