#include "qapmap/local_search.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "qapmap/distance.hpp"
#include "qapmap/error.hpp"
#include "qapmap/rng.hpp"

namespace qapmap {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void validate_inputs(const CommGraph& g, const HierarchyTopology& t, const Mapping& m,
                     const ContribTable& ct, const SearchConfig& cfg,
                     const DenseQap* dense) {
  if (m.size() != g.n || t.n_pes() != g.n ||
      static_cast<int>(ct.contrib.size()) != g.n)
    throw Error(ErrorCode::SizeMismatch, "graph, hierarchy, mapping, and table sizes differ");
  if (cfg.use_slow_gain) {
    if (dense == nullptr)
      throw Error(ErrorCode::InvalidArgument, "slow gain path needs the dense instance");
    if (dense->n != g.n)
      throw Error(ErrorCode::SizeMismatch, "dense instance order does not match graph");
  }
}

// Inspects one candidate pair: computes the gain on the configured path and
// applies the swap when strictly improving. Both paths leave the table valid.
struct Inspector {
  const CommGraph& g;
  const HierarchyTopology& t;
  Mapping& m;
  ContribTable& ct;
  const DenseQap* dense;
  bool slow;
  SearchStats& stats;

  bool visit(int u, int v) {
    ++stats.pairs_inspected;
    if (u == v) return false;
    const double gain = slow ? dense->swap_gain(m, u, v) : swap_gain(g, t, m, u, v);
    if (gain > 0.0) {
      apply_swap_with_update(g, t, m, ct, u, v);
      ++stats.swaps;
      return true;
    }
    return false;
  }
};

// Depth-limited BFS around u; calls f(v) for every v != u within d hops.
// stamp/depth/queue are caller-owned scratch, stamped by source vertex.
template <typename F>
void for_each_within(const CommGraph& g, int u, int d, std::vector<int>& stamp,
                     std::vector<int>& depth, std::vector<int>& queue, F&& f) {
  queue.clear();
  queue.push_back(u);
  stamp[u] = u;
  depth[u] = 0;
  for (size_t head = 0; head < queue.size(); ++head) {
    const int x = queue[head];
    if (depth[x] == d) continue;
    for (int64_t e = g.xadj[x]; e < g.xadj[x + 1]; ++e) {
      const int v = g.adj[e];
      if (stamp[v] != u) {
        stamp[v] = u;
        depth[v] = depth[x] + 1;
        queue.push_back(v);
      }
    }
  }
  for (size_t i = 1; i < queue.size(); ++i) f(queue[i]);
}

int64_t count_pairs_within(const CommGraph& g, int d) {
  std::vector<int> stamp(g.n, -1), depth(g.n, 0), queue;
  int64_t total = 0;
  for (int u = 0; u < g.n; ++u) {
    for_each_within(g, u, d, stamp, depth, queue, [&](int v) {
      if (v > u) ++total;
    });
  }
  return total;
}

}  // namespace

std::vector<std::pair<int, int>> enumerate_pairs_within(const CommGraph& g, int d) {
  if (d < 0) throw Error(ErrorCode::InvalidArgument, "hop radius must be nonnegative");
  std::vector<std::pair<int, int>> out;
  if (d == 0 || g.n < 2) return out;
  std::vector<int> stamp(g.n, -1), depth(g.n, 0), queue;
  for (int u = 0; u < g.n; ++u) {
    for_each_within(g, u, d, stamp, depth, queue, [&](int v) {
      if (v > u) out.emplace_back(u, v);
    });
  }
  return out;
}

SearchStats search_n2(const CommGraph& g, const HierarchyTopology& t, Mapping& m,
                      ContribTable& ct, const SearchConfig& cfg, const DenseQap* dense) {
  validate_inputs(g, t, m, ct, cfg, dense);
  SearchStats stats;
  const auto t0 = Clock::now();
  const int n = g.n;
  if (n >= 2) {
    Inspector ins{g, t, m, ct, dense, cfg.use_slow_gain, stats};
    const int64_t window = static_cast<int64_t>(n) * (n - 1) / 2;
    int64_t fails = 0;
    int i = 0, j = 1;
    while (fails < window) {
      if (ins.visit(i, j)) {
        fails = 0;
      } else {
        ++fails;
      }
      ++j;
      if (j >= n) {
        ++i;
        if (i >= n - 1) {
          i = 0;
          ++stats.passes;
          if (cfg.max_passes > 0 && stats.passes >= cfg.max_passes) break;
        }
        j = i + 1;
      }
    }
  }
  stats.wall_ms = elapsed_ms(t0);
  return stats;
}

SearchStats search_np(const CommGraph& g, const HierarchyTopology& t, Mapping& m,
                      ContribTable& ct, const SearchConfig& cfg, const DenseQap* dense) {
  validate_inputs(g, t, m, ct, cfg, dense);
  if (cfg.block_size > g.n)
    throw Error(ErrorCode::InvalidArgument, "block size exceeds the process count");
  SearchStats stats;
  const auto t0 = Clock::now();
  const int n = g.n;
  const int bs = cfg.block_size > 0
                     ? cfg.block_size
                     : std::max(2, n / 64);
  const int64_t g1 = t.group_size(0);

  // candidate list lives in PE space and never changes; swaps inside one
  // innermost group cannot move the objective, so those pairs are dropped
  std::vector<std::pair<int, int>> cand;
  for (int base = 0; base < n; base += bs) {
    const int hi = std::min(base + bs, n);
    for (int p = base; p < hi; ++p) {
      for (int q = p + 1; q < hi; ++q) {
        if (p / g1 != q / g1) cand.emplace_back(p, q);
      }
    }
  }

  if (!cand.empty()) {
    Inspector ins{g, t, m, ct, dense, cfg.use_slow_gain, stats};
    const int64_t window = static_cast<int64_t>(cand.size());
    int64_t fails = 0;
    size_t idx = 0;
    while (fails < window) {
      const auto [p, q] = cand[idx];
      if (ins.visit(m.proc_on(p), m.proc_on(q))) {
        fails = 0;
      } else {
        ++fails;
      }
      if (++idx == cand.size()) {
        idx = 0;
        ++stats.passes;
        if (cfg.max_passes > 0 && stats.passes >= cfg.max_passes) break;
      }
    }
  }
  stats.wall_ms = elapsed_ms(t0);
  return stats;
}

SearchStats search_ncd(const CommGraph& g, const HierarchyTopology& t, Mapping& m,
                       ContribTable& ct, const SearchConfig& cfg, const DenseQap* dense) {
  validate_inputs(g, t, m, ct, cfg, dense);
  if (cfg.d < 1) throw Error(ErrorCode::InvalidArgument, "hop radius must be at least 1");
  SearchStats stats;
  const auto t0 = Clock::now();
  const int64_t g1 = t.group_size(0);
  const int64_t total = count_pairs_within(g, cfg.d);
  if (total == 0) {
    stats.wall_ms = elapsed_ms(t0);
    return stats;
  }

  const int64_t cache_limit = cfg.pair_cache_limit >= 0 ? cfg.pair_cache_limit : 64 * g.m;
  Inspector ins{g, t, m, ct, dense, cfg.use_slow_gain, stats};
  Rng rng(cfg.seed);
  int64_t fails = 0;

  auto same_group = [&](int u, int v) {
    return m.pe_of(u) / g1 == m.pe_of(v) / g1;
  };

  // The visiting order is shuffled once and then kept fixed: the
  // consecutive-failure window proves local optimality only when any
  // |pairs| successive visits cover every pair, which a fresh shuffle
  // per pass would break.
  if (total <= cache_limit) {
    std::vector<std::pair<int, int>> pairs = enumerate_pairs_within(g, cfg.d);
    rng.shuffle(pairs);
    size_t idx = 0;
    while (fails < total) {
      const auto [u, v] = pairs[idx];
      if (same_group(u, v)) {
        ++stats.pairs_inspected;  // group-internal swaps cannot improve
        ++fails;
      } else if (ins.visit(u, v)) {
        fails = 0;
      } else {
        ++fails;
      }
      if (++idx == pairs.size()) {
        idx = 0;
        ++stats.passes;
        if (cfg.max_passes > 0 && stats.passes >= cfg.max_passes) break;
      }
    }
  } else {
    // pair list too large to hold: walk the d-neighborhoods afresh each pass,
    // randomizing the source-vertex order instead of the pair order
    std::vector<int> order(g.n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<int> stamp(g.n, -1), depth(g.n, 0), queue, hood;
    bool done = false;
    while (!done) {
      for (int u : order) {
        hood.clear();
        for_each_within(g, u, cfg.d, stamp, depth, queue, [&](int v) {
          if (v > u) hood.push_back(v);
        });
        for (int v : hood) {
          if (same_group(u, v)) {
            ++stats.pairs_inspected;
            ++fails;
          } else if (ins.visit(u, v)) {
            fails = 0;
          } else {
            ++fails;
          }
          if (fails >= total) {
            done = true;
            break;
          }
        }
        if (done) break;
      }
      if (!done) {
        ++stats.passes;
        if (cfg.max_passes > 0 && stats.passes >= cfg.max_passes) break;
      }
    }
  }
  stats.wall_ms = elapsed_ms(t0);
  return stats;
}

SearchStats run_search(const CommGraph& g, const HierarchyTopology& t, Mapping& m,
                       ContribTable& ct, const SearchConfig& cfg, const DenseQap* dense) {
  switch (cfg.neighborhood) {
    case Neighborhood::N2:
      return search_n2(g, t, m, ct, cfg, dense);
    case Neighborhood::Np:
      return search_np(g, t, m, ct, cfg, dense);
    case Neighborhood::Ncd:
      return search_ncd(g, t, m, ct, cfg, dense);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown neighborhood");
}

}  // namespace qapmap
