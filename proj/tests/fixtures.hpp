#pragma once

// Shared fixtures and helpers for the test binaries.
//
// F1: unweighted path 0-1-2-3 on the 2x2 machine. The identity mapping
//     scores 24, which is also the global optimum.
// F2: two heavy disjoint edges {0-2, 1-3} on the same machine. The identity
//     mapping scores 200; the optimum is 20 and requires splitting the
//     machine along the communication components.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qapmap/error.hpp"
#include "qapmap/graph.hpp"
#include "qapmap/rng.hpp"
#include "qapmap/topology.hpp"

namespace testutil {

using Edge = std::tuple<int, int, double>;

inline qapmap::WeightedGraph from_edges(int n, const std::vector<Edge>& edges) {
  qapmap::GraphBuilder b(n);
  for (const auto& [u, v, w] : edges) b.add_edge(u, v, w);
  return b.build();
}

inline qapmap::WeightedGraph f1_graph() {
  return from_edges(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
}

inline qapmap::WeightedGraph f2_graph() {
  return from_edges(4, {{0, 2, 5.0}, {1, 3, 5.0}});
}

inline qapmap::HierarchyTopology topo22() {
  return qapmap::HierarchyTopology({2, 2}, {1.0, 10.0});
}

inline qapmap::WeightedGraph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return from_edges(n, edges);
}

/// Random spanning tree plus `extra` distinct chords; integer weights 1..9.
inline qapmap::WeightedGraph random_connected_graph(int n, int extra, uint64_t seed) {
  qapmap::Rng rng(seed);
  const std::vector<int> order = rng.permutation(n);
  std::set<std::pair<int, int>> used;
  std::vector<Edge> edges;
  for (int i = 1; i < n; ++i) {
    const int u = order[i];
    const int v = order[rng.next_int(i)];
    used.insert(std::minmax(u, v));
    edges.push_back({u, v, static_cast<double>(1 + rng.next_int(9))});
  }
  for (int guard = 0; extra > 0 && guard < 1000 * n; ++guard) {
    const int u = rng.next_int(n);
    const int v = rng.next_int(n);
    if (u == v) continue;
    if (!used.insert(std::minmax(u, v)).second) continue;
    edges.push_back({u, v, static_cast<double>(1 + rng.next_int(9))});
    --extra;
  }
  return from_edges(n, edges);
}

/// The error code a snippet raises; fails the test when nothing is thrown.
template <typename Fn>
qapmap::ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const qapmap::Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected a qapmap::Error, none was raised");
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<uint64_t> counter{0};
    std::random_device rd;
    std::ostringstream name;
    name << "qapmap_test_" << std::hex << rd() << "_" << counter++;
    path_ = std::filesystem::temp_directory_path() / name.str();
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string dir() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testutil
