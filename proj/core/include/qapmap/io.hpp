#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qapmap/graph.hpp"
#include "qapmap/mapping.hpp"
#include "qapmap/topology.hpp"

namespace qapmap {

/// Reads a METIS graph file. Header "n m fmt" with fmt in {0, 1, 10, 11};
/// '%' comment lines are skipped; neighbor ids are 1-indexed on disk and
/// converted to 0-indexed. The adjacency must be symmetric and the
/// undirected edge count must match the header. Weights are integers unless
/// allow_real_weights is set (an extension to the standard format).
WeightedGraph read_metis(const std::string& path, bool allow_real_weights = false);

/// Writes METIS format with canonical (ascending) neighbor order. Vertex and
/// edge weight sections are emitted only when some weight differs from 1.
/// Non-integral edge weights are written in full precision and require
/// allow_real_weights on read.
void write_metis(const std::string& path, const WeightedGraph& g);

/// Parses colon-separated hierarchy factors and level distances, e.g.
/// ("4:16:2", "1:10:100"). Token counts must match; factors must be positive
/// integers and distances positive and strictly increasing.
HierarchyTopology parse_hierarchy_spec(const std::string& factors,
                                       const std::string& distances);

/// Mapping file: line i holds the PE of process i.
void write_mapping(const std::string& path, const Mapping& m);

/// Reads a mapping file and validates the permutation property against the
/// expected process count.
Mapping read_mapping(const std::string& path, int expected_n);

/// One benchmark run: the harness's unit of record.
struct RunResult {
  std::string instance;
  std::string algorithm;
  std::map<std::string, std::string> params;
  uint64_t seed = 0;
  double objective = 0.0;
  double time_ms = 0.0;
  int64_t swaps = 0;
  int64_t pairs_inspected = 0;
  int64_t passes = 0;
};

/// Appends results as line-delimited JSON, one object per line. Each line
/// carries a schema_version field next to the nine record fields.
void write_results(const std::string& path, const std::vector<RunResult>& results,
                   bool append = true);

std::vector<RunResult> read_results(const std::string& path);

}  // namespace qapmap
