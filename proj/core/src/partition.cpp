#include "qapmap/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <queue>
#include <string>
#include <utility>

#include "qapmap/error.hpp"
#include "qapmap/rng.hpp"

namespace qapmap {

double cut_weight(const WeightedGraph& g, const Partition& p) {
  if (static_cast<int>(p.block_of.size()) != g.n)
    throw Error(ErrorCode::SizeMismatch, "partition size does not match graph order");
  double cut = 0.0;
  for (int u = 0; u < g.n; ++u) {
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const int v = g.adj[e];
      if (v > u && p.block_of[u] != p.block_of[v]) cut += g.ewgt[e];
    }
  }
  return cut;
}

WeightedGraph contract(const WeightedGraph& g, const Partition& p) {
  if (static_cast<int>(p.block_of.size()) != g.n)
    throw Error(ErrorCode::SizeMismatch, "partition size does not match graph order");
  if (p.k < 1) throw Error(ErrorCode::InvalidArgument, "partition needs at least one block");
  for (int b : p.block_of) {
    if (b < 0 || b >= p.k) throw Error(ErrorCode::IndexOutOfRange, "block id out of range");
  }

  std::vector<std::pair<int64_t, double>> cross;
  for (int u = 0; u < g.n; ++u) {
    const int bu = p.block_of[u];
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const int v = g.adj[e];
      if (v <= u) continue;
      const int bv = p.block_of[v];
      if (bu == bv) continue;
      const int64_t a = std::min(bu, bv);
      const int64_t b = std::max(bu, bv);
      cross.emplace_back(a * p.k + b, g.ewgt[e]);
    }
  }
  std::sort(cross.begin(), cross.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  GraphBuilder builder(p.k);
  std::vector<double> wsum(p.k, 0.0);
  for (int u = 0; u < g.n; ++u) wsum[p.block_of[u]] += g.vwgt[u];
  for (int b = 0; b < p.k; ++b) builder.set_vertex_weight(b, wsum[b]);

  size_t i = 0;
  while (i < cross.size()) {
    const int64_t key = cross[i].first;
    double w = 0.0;
    while (i < cross.size() && cross[i].first == key) w += cross[i++].second;
    builder.add_edge(static_cast<int>(key / p.k), static_cast<int>(key % p.k), w);
  }
  return builder.build();
}

namespace {

constexpr int kRefinePasses = 12;
constexpr int kCandidatesPerSide = 8;
constexpr int kGrowAttempts = 4;

// Heavy-edge matching. Vertices are visited in a seeded random order; each
// unmatched vertex pairs with its heaviest unmatched neighbor whose combined
// fine-vertex count stays within `limit`. Returns compact coarse ids.
std::pair<std::vector<int>, int> heavy_edge_matching(const WeightedGraph& g,
                                                     const std::vector<int64_t>& counts,
                                                     int64_t limit, Rng& rng) {
  std::vector<int> match(g.n, -1);
  const std::vector<int> order = rng.permutation(g.n);
  for (int u : order) {
    if (match[u] != -1) continue;
    int best = -1;
    double best_w = 0.0;
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const int v = g.adj[e];
      if (match[v] != -1 || counts[u] + counts[v] > limit) continue;
      const double w = g.ewgt[e];
      if (best == -1 || w > best_w || (w == best_w && counts[v] < counts[best])) {
        best = v;
        best_w = w;
      }
    }
    if (best != -1) {
      match[u] = best;
      match[best] = u;
    }
  }
  std::vector<int> coarse_id(g.n, -1);
  int next = 0;
  for (int u = 0; u < g.n; ++u) {
    if (coarse_id[u] != -1) continue;
    coarse_id[u] = next;
    if (match[u] != -1) coarse_id[match[u]] = next;
    ++next;
  }
  return {std::move(coarse_id), next};
}

// Farthest vertex (by BFS hops over still-unassigned vertices) from a random
// unassigned seed; approximates a peripheral start for block growing.
int peripheral_start(const WeightedGraph& g, const std::vector<int>& block_of,
                     const std::vector<int>& unassigned_pool, Rng& rng,
                     std::vector<int>& visit_stamp, int stamp) {
  const int seed_v = unassigned_pool[static_cast<size_t>(
      rng.next_below(static_cast<uint64_t>(unassigned_pool.size())))];
  std::queue<int> q;
  q.push(seed_v);
  visit_stamp[seed_v] = stamp;
  int last = seed_v;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    last = u;
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const int v = g.adj[e];
      if (block_of[v] == -1 && visit_stamp[v] != stamp) {
        visit_stamp[v] = stamp;
        q.push(v);
      }
    }
  }
  return last;
}

double cut_of(const WeightedGraph& g, const std::vector<int>& block_of) {
  double cut = 0.0;
  for (int u = 0; u < g.n; ++u) {
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const int v = g.adj[e];
      if (v > u && block_of[u] != block_of[v]) cut += g.ewgt[e];
    }
  }
  return cut;
}

// One greedy growing attempt. Blocks are grown one after another; each block
// absorbs the unassigned vertex with the strongest connection to it until the
// block's fine-vertex count reaches the target. The final block takes the rest.
std::vector<int> grow_blocks(const WeightedGraph& g, const std::vector<int64_t>& counts,
                             int k, int64_t target, Rng& rng) {
  std::vector<int> block_of(g.n, -1);
  std::vector<double> conn(g.n, 0.0);
  std::vector<int> conn_stamp(g.n, -1);
  std::vector<int> visit_stamp(g.n, -1);
  std::vector<int> pool;
  pool.reserve(g.n);
  int cursor = 0;
  int remaining = g.n;

  for (int b = 0; b + 1 < k && remaining > 0; ++b) {
    pool.clear();
    for (int u = 0; u < g.n; ++u) {
      if (block_of[u] == -1) pool.push_back(u);
    }
    std::priority_queue<std::pair<double, int>> frontier;
    const int start = peripheral_start(g, block_of, pool, rng, visit_stamp, b);
    int64_t size_b = 0;

    auto assign = [&](int u) {
      block_of[u] = b;
      size_b += counts[u];
      --remaining;
      for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
        const int v = g.adj[e];
        if (block_of[v] != -1) continue;
        if (conn_stamp[v] != b) {
          conn_stamp[v] = b;
          conn[v] = 0.0;
        }
        conn[v] += g.ewgt[e];
        frontier.emplace(conn[v], v);
      }
    };

    assign(start);
    while (size_b < target && remaining > 0) {
      int pick = -1;
      while (!frontier.empty()) {
        const auto [w, v] = frontier.top();
        frontier.pop();
        if (block_of[v] == -1 && conn_stamp[v] == b && conn[v] == w) {
          pick = v;
          break;
        }
      }
      if (pick == -1) {
        while (cursor < g.n && block_of[cursor] != -1) ++cursor;
        if (cursor == g.n) break;
        pick = cursor;
      }
      assign(pick);
    }
  }
  for (int u = 0; u < g.n; ++u) {
    if (block_of[u] == -1) block_of[u] = k - 1;
  }
  return block_of;
}

// Moves vertices out of over-full blocks until every block hits its target
// count or no move reduces the imbalance further. With unit counts the loop
// always reaches exact balance. Among imbalance-reducing moves the one losing
// the least cut weight is applied.
void repair_balance(const WeightedGraph& g, const std::vector<int64_t>& counts,
                    std::vector<int>& block_of, int k, int64_t target) {
  std::vector<int64_t> bc(k, 0);
  for (int u = 0; u < g.n; ++u) bc[block_of[u]] += counts[u];

  std::vector<double> conn(k, 0.0);
  std::vector<int> touched;
  const int64_t move_cap = 8LL * g.n + 64;
  for (int64_t iter = 0; iter < move_cap; ++iter) {
    int most_under = -1;
    bool any_over = false;
    for (int b = 0; b < k; ++b) {
      if (bc[b] > target) any_over = true;
      if (bc[b] < target && (most_under == -1 || bc[b] < bc[most_under])) most_under = b;
    }
    if (!any_over || most_under == -1) break;

    int best_v = -1;
    int best_to = -1;
    double best_gain = 0.0;
    for (int v = 0; v < g.n; ++v) {
      const int a = block_of[v];
      if (bc[a] <= target) continue;
      const int64_t c = counts[v];
      const int64_t dev_a = bc[a] - target;

      touched.clear();
      for (int64_t e = g.xadj[v]; e < g.xadj[v + 1]; ++e) {
        const int b = block_of[g.adj[e]];
        if (conn[b] == 0.0) touched.push_back(b);
        conn[b] += g.ewgt[e];
      }

      auto consider = [&](int b) {
        if (b == a || bc[b] >= target) return;
        const int64_t dev_b = target - bc[b];
        const int64_t new_dev = std::llabs(bc[a] - c - target) + std::llabs(bc[b] + c - target);
        if (new_dev >= dev_a + dev_b) return;
        const double gain = conn[b] - conn[a];
        if (best_v == -1 || gain > best_gain) {
          best_v = v;
          best_to = b;
          best_gain = gain;
        }
      };
      for (int b : touched) consider(b);
      consider(most_under);  // covers moves into blocks v has no edge to

      for (int b : touched) conn[b] = 0.0;
    }
    if (best_v == -1) break;
    bc[block_of[best_v]] -= counts[best_v];
    bc[best_to] += counts[best_v];
    block_of[best_v] = best_to;
  }
}

double conn_to(const WeightedGraph& g, const std::vector<int>& block_of, int u, int b) {
  double s = 0.0;
  for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
    if (block_of[g.adj[e]] == b) s += g.ewgt[e];
  }
  return s;
}

// Pairwise swap refinement. Per pass: collect the boundary of every adjacent
// block pair and run a Kernighan-Lin round on it: tentatively apply the best
// remaining swap even at negative gain, lock the swapped vertices, then keep
// the prefix of the sequence with the largest strictly positive cumulative
// gain and undo the rest. Only equal-count vertices are swapped, so every
// block's fine-vertex count is preserved exactly.
void refine_swaps(const WeightedGraph& g, const std::vector<int64_t>& counts,
                  std::vector<int>& block_of, int k, uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<double, int>> side_a, side_b;
  std::vector<char> lock_a, lock_b;
  std::vector<std::pair<int, int>> applied;
  for (int pass = 0; pass < kRefinePasses; ++pass) {
    std::map<std::pair<int, int>, std::pair<std::vector<int>, std::vector<int>>> boundary;
    for (int u = 0; u < g.n; ++u) {
      for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
        const int v = g.adj[e];
        if (v <= u) continue;
        const int bu = block_of[u];
        const int bv = block_of[v];
        if (bu == bv) continue;
        auto& entry = boundary[{std::min(bu, bv), std::max(bu, bv)}];
        if (bu < bv) {
          entry.first.push_back(u);
          entry.second.push_back(v);
        } else {
          entry.first.push_back(v);
          entry.second.push_back(u);
        }
      }
    }
    if (boundary.empty()) break;

    std::vector<std::pair<int, int>> keys;
    keys.reserve(boundary.size());
    for (const auto& kv : boundary) keys.push_back(kv.first);
    rng.shuffle(keys);

    bool improved = false;
    for (const auto& key : keys) {
      const auto [a, b] = key;
      auto& entry = boundary[key];

      auto rank_side = [&](std::vector<int>& verts, int from, int to,
                           std::vector<std::pair<double, int>>& out) {
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        out.clear();
        for (int u : verts) {
          if (block_of[u] != from) continue;  // moved by an earlier pair this pass
          out.emplace_back(conn_to(g, block_of, u, to) - conn_to(g, block_of, u, from), u);
        }
        std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
          return x.first > y.first || (x.first == y.first && x.second < y.second);
        });
        if (static_cast<int>(out.size()) > kCandidatesPerSide) out.resize(kCandidatesPerSide);
      };
      rank_side(entry.first, a, b, side_a);
      rank_side(entry.second, b, a, side_b);
      lock_a.assign(side_a.size(), 0);
      lock_b.assign(side_b.size(), 0);

      applied.clear();
      double run_gain = 0.0;
      double best_cum = 0.0;
      size_t best_len = 0;
      const size_t steps = std::min(side_a.size(), side_b.size());
      for (size_t s = 0; s < steps; ++s) {
        size_t bi = side_a.size(), bj = side_b.size();
        double best_gain = 0.0;
        for (size_t i = 0; i < side_a.size(); ++i) {
          if (lock_a[i]) continue;
          for (size_t j = 0; j < side_b.size(); ++j) {
            if (lock_b[j]) continue;
            const int u = side_a[i].second;
            const int v = side_b[j].second;
            if (counts[u] != counts[v]) continue;
            const double gain =
                side_a[i].first + side_b[j].first - 2.0 * g.edge_weight(u, v);
            if (bi == side_a.size() || gain > best_gain) {
              best_gain = gain;
              bi = i;
              bj = j;
            }
          }
        }
        if (bi == side_a.size()) break;
        const int u = side_a[bi].second;
        const int v = side_b[bj].second;
        block_of[u] = b;
        block_of[v] = a;
        lock_a[bi] = 1;
        lock_b[bj] = 1;
        applied.emplace_back(u, v);
        run_gain += best_gain;
        if (run_gain > best_cum) {
          best_cum = run_gain;
          best_len = applied.size();
        }
        for (size_t i = 0; i < side_a.size(); ++i) {
          if (lock_a[i]) continue;
          const int x = side_a[i].second;
          side_a[i].first = conn_to(g, block_of, x, b) - conn_to(g, block_of, x, a);
        }
        for (size_t j = 0; j < side_b.size(); ++j) {
          if (lock_b[j]) continue;
          const int x = side_b[j].second;
          side_b[j].first = conn_to(g, block_of, x, a) - conn_to(g, block_of, x, b);
        }
      }
      for (size_t s = applied.size(); s > best_len; --s) {
        block_of[applied[s - 1].first] = a;
        block_of[applied[s - 1].second] = b;
      }
      if (best_len > 0) improved = true;
    }
    if (!improved) break;
  }
}

std::vector<int> initial_partition(const WeightedGraph& g, const std::vector<int64_t>& counts,
                                   int k, int64_t target, uint64_t seed) {
  std::vector<int> best;
  int64_t best_imb = 0;
  double best_cut = 0.0;
  for (int attempt = 0; attempt < kGrowAttempts; ++attempt) {
    Rng rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(attempt + 1));
    std::vector<int> cand = grow_blocks(g, counts, k, target, rng);
    std::vector<int64_t> bc(k, 0);
    for (int u = 0; u < g.n; ++u) bc[cand[u]] += counts[u];
    int64_t imb = 0;
    for (int b = 0; b < k; ++b) imb += std::llabs(bc[b] - target);
    const double cut = cut_of(g, cand);
    if (best.empty() || imb < best_imb || (imb == best_imb && cut < best_cut)) {
      best = std::move(cand);
      best_imb = imb;
      best_cut = cut;
    }
  }
  return best;
}

struct CoarseLevel {
  WeightedGraph graph;
  std::vector<int64_t> counts;
  std::vector<int> fine_to_coarse;
};

}  // namespace

Partition partition_balanced(const WeightedGraph& g, int k, uint64_t seed) {
  if (g.n < 1) throw Error(ErrorCode::InvalidArgument, "cannot partition an empty graph");
  if (k < 1 || k > g.n || g.n % k != 0)
    throw Error(ErrorCode::DivisibilityViolation,
                "block count " + std::to_string(k) + " must divide graph order " +
                    std::to_string(g.n));

  Partition result;
  result.k = k;
  const int64_t target = g.n / k;

  if (k == 1) {
    result.block_of.assign(g.n, 0);
    result.block_sizes.assign(1, g.n);
    return result;
  }
  if (k == g.n) {
    result.block_of.resize(g.n);
    for (int u = 0; u < g.n; ++u) result.block_of[u] = u;
    result.block_sizes.assign(g.n, 1);
    return result;
  }

  const int64_t coarsen_floor = std::max<int64_t>(30LL * k, 2000);
  std::vector<CoarseLevel> levels;
  levels.reserve(64);
  const WeightedGraph* cur = &g;
  std::vector<int64_t> cur_counts(g.n, 1);
  Rng coarsen_rng(seed ^ 0xc0a5c0a5c0a5c0a5ULL);

  while (cur->n > coarsen_floor) {
    auto [coarse_id, nc] = heavy_edge_matching(*cur, cur_counts, target, coarsen_rng);
    if (nc >= static_cast<int>(0.95 * cur->n) || nc < k) break;
    Partition match_p;
    match_p.k = nc;
    match_p.block_of = coarse_id;
    CoarseLevel lvl;
    lvl.graph = contract(*cur, match_p);
    lvl.counts.assign(nc, 0);
    for (int u = 0; u < cur->n; ++u) lvl.counts[coarse_id[u]] += cur_counts[u];
    lvl.fine_to_coarse = std::move(coarse_id);
    levels.push_back(std::move(lvl));
    cur = &levels.back().graph;
    cur_counts = levels.back().counts;
  }

  std::vector<int> part = initial_partition(*cur, cur_counts, k, target, seed);
  repair_balance(*cur, cur_counts, part, k, target);
  refine_swaps(*cur, cur_counts, part, k, seed ^ 0x5ef17ebe5ef17ebeULL);

  const std::vector<int64_t> unit_counts(g.n, 1);
  for (int i = static_cast<int>(levels.size()) - 1; i >= 0; --i) {
    const WeightedGraph& fine = (i == 0) ? g : levels[i - 1].graph;
    const std::vector<int64_t>& fine_counts = (i == 0) ? unit_counts : levels[i - 1].counts;
    std::vector<int> fine_part(fine.n);
    for (int u = 0; u < fine.n; ++u) fine_part[u] = part[levels[i].fine_to_coarse[u]];
    part = std::move(fine_part);
    repair_balance(fine, fine_counts, part, k, target);
    refine_swaps(fine, fine_counts, part, k, seed + static_cast<uint64_t>(i) + 1);
  }

  result.block_of = std::move(part);
  result.block_sizes.assign(k, 0);
  for (int u = 0; u < g.n; ++u) ++result.block_sizes[result.block_of[u]];
  if (!result.exactly_balanced())
    throw Error(ErrorCode::Unbalanced, "partitioner failed to reach exact balance");
  return result;
}

Partition refine_balanced(const WeightedGraph& g, Partition p, uint64_t seed) {
  if (static_cast<int>(p.block_of.size()) != g.n)
    throw Error(ErrorCode::SizeMismatch, "partition size does not match graph order");
  if (!p.exactly_balanced())
    throw Error(ErrorCode::Unbalanced, "refinement requires an exactly balanced input");
  const std::vector<int64_t> unit_counts(g.n, 1);
  refine_swaps(g, unit_counts, p.block_of, p.k, seed);
  p.block_sizes.assign(p.k, 0);
  for (int u = 0; u < g.n; ++u) ++p.block_sizes[p.block_of[u]];
  return p;
}

PartitionerFn default_partitioner() {
  return [](const WeightedGraph& g, int k, uint64_t seed) {
    return partition_balanced(g, k, seed);
  };
}

}  // namespace qapmap
