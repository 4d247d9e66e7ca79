#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qapmap/error.hpp"

namespace qapmap {

/// Sparse undirected graph in CSR layout. Every undirected edge {u,v} is
/// stored twice (u->v and v->u) with the same weight; adjacency lists are
/// sorted by neighbor id. Vertex weights default to 1 and carry the number
/// of fine vertices represented by a coarse vertex after contraction.
///
/// A communication graph is exactly this structure with unit vertex weights:
/// edge weights are the pairwise communication volumes C_uv and the edge set
/// contains the nonzero entries of C.
struct WeightedGraph {
  int n = 0;
  int64_t m = 0;  // number of undirected edges
  std::vector<int64_t> xadj;   // size n+1
  std::vector<int> adj;        // size 2m
  std::vector<double> ewgt;    // size 2m
  std::vector<double> vwgt;    // size n

  int64_t degree(int u) const { return xadj[u + 1] - xadj[u]; }

  double weighted_degree(int u) const {
    double s = 0.0;
    for (int64_t e = xadj[u]; e < xadj[u + 1]; ++e) s += ewgt[e];
    return s;
  }

  double total_vertex_weight() const {
    double s = 0.0;
    for (double w : vwgt) s += w;
    return s;
  }

  /// Weight of edge {u,v}, or 0 if absent. Binary search over u's sorted list.
  double edge_weight(int u, int v) const;

  bool has_edge(int u, int v) const { return edge_weight(u, v) != 0.0; }
};

using CommGraph = WeightedGraph;

/// Assembles a WeightedGraph from undirected edges given once each.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n) : n_(n), vwgt_(n, 1.0) {}

  /// Adds the undirected edge {u,v}. Rejects self-loops, nonpositive
  /// weights, and out-of-range endpoints.
  void add_edge(int u, int v, double w = 1.0);

  void set_vertex_weight(int u, double w) { vwgt_.at(u) = w; }

  /// Sorts adjacency, checks for duplicate edges, and produces the CSR graph.
  WeightedGraph build();

 private:
  int n_;
  std::vector<std::tuple<int, int, double>> edges_;
  std::vector<double> vwgt_;
};

struct GraphViolation {
  ErrorCode code = ErrorCode::InvalidArgument;
  int u = -1;
  int v = -1;
  std::string message;
};

/// Structural validity check: symmetry of the stored adjacency, strictly
/// positive weights, no self-loops, degree sum equal to 2m. Returns the
/// first violation found, or nullopt if the graph is well formed.
std::optional<GraphViolation> validate_comm_graph(const WeightedGraph& g);

/// Subgraph induced by `vertices` (must be distinct and in range). Vertex i
/// of the result corresponds to vertices[i]; vertex weights are carried over.
WeightedGraph induced_subgraph(const WeightedGraph& g, const std::vector<int>& vertices);

}  // namespace qapmap
