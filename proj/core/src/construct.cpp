#include "qapmap/construct.hpp"

#include <string>
#include <vector>

#include "qapmap/distance.hpp"
#include "qapmap/error.hpp"
#include "qapmap/rng.hpp"

namespace qapmap {

namespace {

void check_instance(const CommGraph& g, const HierarchyTopology& t) {
  if (t.n_pes() != g.n)
    throw Error(ErrorCode::SizeMismatch, "hierarchy provides " +
                                             std::to_string(t.n_pes()) + " pes for " +
                                             std::to_string(g.n) + " processes");
}

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed step shared by the two greedy constructions: the heaviest process by
// weighted degree goes to the PE with the smallest distance row sum.
std::pair<int, int> greedy_seed_pair(const CommGraph& g, const HierarchyTopology& t) {
  int u0 = 0;
  double best_w = -1.0;
  for (int u = 0; u < g.n; ++u) {
    const double w = g.weighted_degree(u);
    if (w > best_w) {
      best_w = w;
      u0 = u;
    }
  }
  int p0 = 0;
  double best_s = -1.0;
  for (int p = 0; p < g.n; ++p) {
    double s = 0.0;
    for (int q = 0; q < g.n; ++q) s += pe_distance(t, p, q);
    if (best_s < 0.0 || s < best_s) {
      best_s = s;
      p0 = p;
    }
  }
  return {u0, p0};
}

// Picks the unassigned process with the largest communication volume into the
// assigned set. comm[] is maintained incrementally by the callers.
int next_process(const std::vector<double>& comm, const std::vector<bool>& assigned) {
  int pick = -1;
  double best = -1.0;
  for (int u = 0; u < static_cast<int>(comm.size()); ++u) {
    if (assigned[u]) continue;
    if (pick == -1 || comm[u] > best) {
      best = comm[u];
      pick = u;
    }
  }
  return pick;
}

}  // namespace

Mapping construct_identity(int n) { return Mapping::identity(n); }

Mapping construct_random(int n, uint64_t seed) {
  Rng rng(seed);
  return Mapping::from_proc_to_pe(rng.permutation(n));
}

Mapping construct_mueller_merbach(const CommGraph& g, const HierarchyTopology& t) {
  check_instance(g, t);
  const int n = g.n;
  std::vector<int> proc_to_pe(n, -1);
  std::vector<bool> assigned(n, false), taken(n, false);
  std::vector<double> comm(n, 0.0);      // volume into the assigned set
  std::vector<double> distsum(n, 0.0);   // distance sum to the taken PEs

  auto place = [&](int u, int p) {
    proc_to_pe[u] = p;
    assigned[u] = true;
    taken[p] = true;
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const int v = g.adj[e];
      if (!assigned[v]) comm[v] += g.ewgt[e];
    }
    for (int q = 0; q < n; ++q) {
      if (!taken[q]) distsum[q] += pe_distance(t, q, p);
    }
  };

  const auto [u0, p0] = greedy_seed_pair(g, t);
  place(u0, p0);
  for (int round = 1; round < n; ++round) {
    const int u = next_process(comm, assigned);
    int p = -1;
    double best = -1.0;
    for (int q = 0; q < n; ++q) {
      if (taken[q]) continue;
      if (p == -1 || distsum[q] < best) {
        best = distsum[q];
        p = q;
      }
    }
    place(u, p);
  }
  return Mapping::from_proc_to_pe(std::move(proc_to_pe));
}

Mapping construct_greedy_all_c(const CommGraph& g, const HierarchyTopology& t) {
  check_instance(g, t);
  const int n = g.n;
  std::vector<int> proc_to_pe(n, -1);
  std::vector<bool> assigned(n, false), taken(n, false);
  std::vector<double> comm(n, 0.0);

  auto place = [&](int u, int p) {
    proc_to_pe[u] = p;
    assigned[u] = true;
    taken[p] = true;
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const int v = g.adj[e];
      if (!assigned[v]) comm[v] += g.ewgt[e];
    }
  };

  const auto [u0, p0] = greedy_seed_pair(g, t);
  place(u0, p0);
  for (int round = 1; round < n; ++round) {
    const int u = next_process(comm, assigned);
    int p = -1;
    double best = -1.0;
    for (int c = 0; c < n; ++c) {
      if (taken[c]) continue;
      double score = 0.0;
      for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
        const int v = g.adj[e];
        if (assigned[v]) score += g.ewgt[e] * pe_distance(t, c, proc_to_pe[v]);
      }
      if (p == -1 || score < best) {
        best = score;
        p = c;
      }
    }
    place(u, p);
  }
  return Mapping::from_proc_to_pe(std::move(proc_to_pe));
}

namespace {

void top_down_rec(const CommGraph& g, const HierarchyTopology& t, int level,
                  const std::vector<int>& verts, int pe_start, uint64_t seed,
                  const PartitionerFn& partitioner, std::vector<int>& proc_to_pe) {
  const int sz = static_cast<int>(verts.size());
  if (level == 0) {
    for (int i = 0; i < sz; ++i) proc_to_pe[verts[i]] = pe_start + i;
    return;
  }
  const int parts = t.factor(level);
  const int child_sz = sz / parts;
  const WeightedGraph sub = induced_subgraph(g, verts);
  const Partition p = partitioner(sub, parts, seed);
  std::vector<int> child;
  child.reserve(child_sz);
  for (int b = 0; b < parts; ++b) {
    child.clear();
    for (int i = 0; i < sz; ++i) {
      if (p.block_of[i] == b) child.push_back(verts[i]);
    }
    top_down_rec(g, t, level - 1, child, pe_start + b * child_sz,
                 mix_seed(seed, static_cast<uint64_t>(level) * 1024 + b), partitioner,
                 proc_to_pe);
  }
}

}  // namespace

Mapping construct_top_down(const CommGraph& g, const HierarchyTopology& t, uint64_t seed,
                           const PartitionerFn& partitioner) {
  check_instance(g, t);
  std::vector<int> verts(g.n);
  for (int u = 0; u < g.n; ++u) verts[u] = u;
  std::vector<int> proc_to_pe(g.n, -1);
  top_down_rec(g, t, t.levels() - 1, verts, 0, seed, partitioner, proc_to_pe);
  return Mapping::from_proc_to_pe(std::move(proc_to_pe));
}

Mapping construct_bottom_up(const CommGraph& g, const HierarchyTopology& t, uint64_t seed,
                            const PartitionerFn& partitioner) {
  check_instance(g, t);
  const int k = t.levels();

  // contract innermost groups first; block_maps[j] sends a level-j vertex to
  // its level-(j+1) parent
  std::vector<std::vector<int>> block_maps;
  block_maps.reserve(k);
  WeightedGraph cur = g;
  for (int j = 0; j < k; ++j) {
    const int parts = cur.n / t.factor(j);
    const Partition p = partitioner(cur, parts, mix_seed(seed, static_cast<uint64_t>(j)));
    block_maps.push_back(p.block_of);
    cur = contract(cur, p);
  }

  // unwind: hand each vertex a consecutive PE range sized by the process
  // count beneath it, children served in ascending id order
  std::vector<int> start(cur.n, 0);
  int64_t span = t.n_pes();
  for (int j = k - 1; j >= 0; --j) {
    span /= t.factor(j);  // processes beneath one level-j vertex
    const std::vector<int>& parent_of = block_maps[j];
    std::vector<int> offset = start;
    std::vector<int> child_start(parent_of.size());
    for (size_t d = 0; d < parent_of.size(); ++d) {
      child_start[d] = offset[parent_of[d]];
      offset[parent_of[d]] += static_cast<int>(span);
    }
    start = std::move(child_start);
  }
  return Mapping::from_proc_to_pe(std::move(start));
}

}  // namespace qapmap
