#include "qapmap/graph.hpp"

#include <algorithm>
#include <tuple>

namespace qapmap {

double WeightedGraph::edge_weight(int u, int v) const {
  const int* first = adj.data() + xadj[u];
  const int* last = adj.data() + xadj[u + 1];
  const int* it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return 0.0;
  return ewgt[xadj[u] + (it - first)];
}

void GraphBuilder::add_edge(int u, int v, double w) {
  if (u < 0 || u >= n_ || v < 0 || v >= n_)
    throw Error(ErrorCode::IndexOutOfRange, "edge endpoint out of range");
  if (u == v) throw Error(ErrorCode::SelfLoop, "self loop rejected");
  if (!(w > 0.0)) throw Error(ErrorCode::NonpositiveWeight, "edge weight must be positive");
  edges_.emplace_back(u, v, w);
}

WeightedGraph GraphBuilder::build() {
  WeightedGraph g;
  g.n = n_;
  g.m = static_cast<int64_t>(edges_.size());
  g.vwgt = vwgt_;

  std::vector<int64_t> deg(n_ + 1, 0);
  for (const auto& [u, v, w] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  g.xadj.assign(n_ + 1, 0);
  for (int i = 0; i < n_; ++i) g.xadj[i + 1] = g.xadj[i] + deg[i];

  g.adj.resize(2 * g.m);
  g.ewgt.resize(2 * g.m);
  std::vector<int64_t> cursor(g.xadj.begin(), g.xadj.end() - 1);
  for (const auto& [u, v, w] : edges_) {
    g.adj[cursor[u]] = v;
    g.ewgt[cursor[u]++] = w;
    g.adj[cursor[v]] = u;
    g.ewgt[cursor[v]++] = w;
  }

  // canonical neighbor order; duplicate undirected edges are a builder bug
  std::vector<std::pair<int, double>> row;
  for (int u = 0; u < n_; ++u) {
    row.clear();
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) row.emplace_back(g.adj[e], g.ewgt[e]);
    std::sort(row.begin(), row.end());
    for (size_t i = 1; i < row.size(); ++i) {
      if (row[i].first == row[i - 1].first)
        throw Error(ErrorCode::InvalidArgument, "duplicate edge in builder");
    }
    for (size_t i = 0; i < row.size(); ++i) {
      g.adj[g.xadj[u] + i] = row[i].first;
      g.ewgt[g.xadj[u] + i] = row[i].second;
    }
  }
  return g;
}

std::optional<GraphViolation> validate_comm_graph(const WeightedGraph& g) {
  int64_t directed = 0;
  for (int u = 0; u < g.n; ++u) {
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const int v = g.adj[e];
      const double w = g.ewgt[e];
      if (v == u)
        return GraphViolation{ErrorCode::SelfLoop, u, v, "vertex has a self loop"};
      if (!(w > 0.0))
        return GraphViolation{ErrorCode::NonpositiveWeight, u, v,
                              "edge weight is not positive"};
      if (g.edge_weight(v, u) != w)
        return GraphViolation{ErrorCode::AsymmetricEdge, u, v,
                              "reverse edge missing or weight differs"};
      ++directed;
    }
  }
  if (directed != 2 * g.m)
    return GraphViolation{ErrorCode::EdgeCountMismatch, -1, -1,
                          "degree sum does not equal 2m"};
  return std::nullopt;
}

WeightedGraph induced_subgraph(const WeightedGraph& g, const std::vector<int>& vertices) {
  std::vector<int> local(g.n, -1);
  for (size_t i = 0; i < vertices.size(); ++i) {
    const int v = vertices[i];
    if (v < 0 || v >= g.n) throw Error(ErrorCode::IndexOutOfRange, "vertex out of range");
    if (local[v] != -1) throw Error(ErrorCode::InvalidArgument, "duplicate vertex");
    local[v] = static_cast<int>(i);
  }

  GraphBuilder b(static_cast<int>(vertices.size()));
  for (size_t i = 0; i < vertices.size(); ++i) {
    const int u = vertices[i];
    b.set_vertex_weight(static_cast<int>(i), g.vwgt[u]);
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      const int v = g.adj[e];
      if (local[v] > static_cast<int>(i)) b.add_edge(static_cast<int>(i), local[v], g.ewgt[e]);
    }
  }
  return b.build();
}

}  // namespace qapmap
