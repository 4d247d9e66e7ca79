#include "qapmap/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "qapmap/error.hpp"

namespace qapmap {

namespace {

int64_t parse_int(const std::string& tok) {
  int64_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw Error(ErrorCode::NonIntegerToken, "expected an integer, got '" + tok + "'");
  return v;
}

double parse_real(const std::string& tok) {
  try {
    size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::NonIntegerToken, "expected a number, got '" + tok + "'");
  }
}

double parse_weight(const std::string& tok, bool allow_real) {
  if (allow_real) return parse_real(tok);
  return static_cast<double>(parse_int(tok));
}

// Advances to the next line that is neither blank nor a '%' comment.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '%') continue;
    return true;
  }
  return false;
}

// Advances past '%' comments only: a blank line is a vertex with no neighbors.
bool next_vertex_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const size_t i = line.find_first_not_of(" \t\r");
    if (i != std::string::npos && line[i] == '%') continue;
    return true;
  }
  return false;
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

// Shortest exact decimal: integers print bare, everything else round-trips.
std::string weight_token(double w) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  double back = 0.0;
  std::sscanf(buf, "%lf", &back);
  if (back == w) {
    for (int prec = 1; prec < 17; ++prec) {
      char shorter[64];
      std::snprintf(shorter, sizeof(shorter), "%.*g", prec, w);
      std::sscanf(shorter, "%lf", &back);
      if (back == w) return shorter;
    }
  }
  return buf;
}

}  // namespace

WeightedGraph read_metis(const std::string& path, bool allow_real_weights) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for reading");

  std::string line;
  if (!next_data_line(in, line))
    throw Error(ErrorCode::MalformedHeader, "missing header line");
  const std::vector<std::string> head = tokens_of(line);
  if (head.size() < 2 || head.size() > 4)
    throw Error(ErrorCode::MalformedHeader, "header needs 2 to 4 fields");
  const int64_t n = parse_int(head[0]);
  const int64_t m = parse_int(head[1]);
  if (n < 0 || m < 0) throw Error(ErrorCode::MalformedHeader, "negative count in header");
  const int64_t fmt = head.size() >= 3 ? parse_int(head[2]) : 0;
  if (fmt != 0 && fmt != 1 && fmt != 10 && fmt != 11)
    throw Error(ErrorCode::MalformedHeader, "unsupported fmt field '" + std::to_string(fmt) + "'");
  if (head.size() >= 4 && parse_int(head[3]) != 1)
    throw Error(ErrorCode::MalformedHeader, "only a single vertex weight is supported");
  const bool has_vw = fmt >= 10;
  const bool has_ew = fmt % 10 == 1;

  GraphBuilder builder(static_cast<int>(n));
  std::vector<std::tuple<int, int, double>> directed;
  directed.reserve(static_cast<size_t>(2 * m));

  for (int u = 0; u < n; ++u) {
    if (!next_vertex_line(in, line))
      throw Error(ErrorCode::TruncatedFile,
                  "vertex line " + std::to_string(u + 1) + " is missing");
    const std::vector<std::string> toks = tokens_of(line);
    size_t pos = 0;
    if (has_vw) {
      if (toks.empty())
        throw Error(ErrorCode::TruncatedFile,
                    "vertex weight missing on line of vertex " + std::to_string(u + 1));
      builder.set_vertex_weight(u, parse_weight(toks[0], allow_real_weights));
      pos = 1;
    }
    if (has_ew && (toks.size() - pos) % 2 != 0)
      throw Error(ErrorCode::TruncatedFile,
                  "dangling token in adjacency of vertex " + std::to_string(u + 1));
    while (pos < toks.size()) {
      const int64_t vid = parse_int(toks[pos++]);
      if (vid < 1 || vid > n)
        throw Error(ErrorCode::IndexOutOfRange,
                    "neighbor id " + std::to_string(vid) + " outside 1.." + std::to_string(n));
      const double w = has_ew ? parse_weight(toks[pos++], allow_real_weights) : 1.0;
      const int v = static_cast<int>(vid - 1);
      if (v == u)
        throw Error(ErrorCode::SelfLoop, "vertex " + std::to_string(u + 1) + " lists itself");
      if (!(w > 0.0))
        throw Error(ErrorCode::NonpositiveWeight,
                    "edge weight " + weight_token(w) + " is not positive");
      directed.emplace_back(u, v, w);
    }
  }
  if (next_data_line(in, line))
    throw Error(ErrorCode::CountMismatch, "more vertex lines than the header announces");
  if (static_cast<int64_t>(directed.size()) != 2 * m)
    throw Error(ErrorCode::EdgeCountMismatch,
                "header announces " + std::to_string(m) + " edges but the adjacency holds " +
                    std::to_string(directed.size()) + " entries");

  std::sort(directed.begin(), directed.end());
  for (size_t i = 1; i < directed.size(); ++i) {
    if (std::get<0>(directed[i]) == std::get<0>(directed[i - 1]) &&
        std::get<1>(directed[i]) == std::get<1>(directed[i - 1]))
      throw Error(ErrorCode::InvalidArgument,
                  "vertex " + std::to_string(std::get<0>(directed[i]) + 1) +
                      " lists neighbor " + std::to_string(std::get<1>(directed[i]) + 1) +
                      " twice");
  }
  for (const auto& [u, v, w] : directed) {
    if (u > v) continue;
    const auto it = std::lower_bound(
        directed.begin(), directed.end(), std::make_tuple(v, u, 0.0),
        [](const auto& a, const auto& b) {
          return std::tie(std::get<0>(a), std::get<1>(a)) <
                 std::tie(std::get<0>(b), std::get<1>(b));
        });
    if (it == directed.end() || std::get<0>(*it) != v || std::get<1>(*it) != u ||
        std::get<2>(*it) != w)
      throw Error(ErrorCode::AsymmetricEdge,
                  "edge " + std::to_string(u + 1) + "-" + std::to_string(v + 1) +
                      " has no matching reverse entry");
    builder.add_edge(u, v, w);
  }
  return builder.build();
}

void write_metis(const std::string& path, const WeightedGraph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");

  bool has_vw = false, has_ew = false;
  for (double w : g.vwgt) has_vw = has_vw || w != 1.0;
  for (double w : g.ewgt) has_ew = has_ew || w != 1.0;

  out << g.n << ' ' << g.m;
  if (has_vw || has_ew) out << ' ' << (has_vw ? (has_ew ? "11" : "10") : "1");
  out << '\n';
  for (int u = 0; u < g.n; ++u) {
    bool first = true;
    if (has_vw) {
      out << weight_token(g.vwgt[u]);
      first = false;
    }
    for (int64_t e = g.xadj[u]; e < g.xadj[u + 1]; ++e) {
      if (!first) out << ' ';
      out << g.adj[e] + 1;
      if (has_ew) out << ' ' << weight_token(g.ewgt[e]);
      first = false;
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write to '" + path + "' failed");
}

namespace {

std::vector<std::string> split_colons(const std::string& s) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    const size_t colon = s.find(':', start);
    const std::string part = s.substr(start, colon - start);
    if (part.empty())
      throw Error(ErrorCode::InvalidArgument, "empty field in '" + s + "'");
    parts.push_back(part);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  return parts;
}

}  // namespace

HierarchyTopology parse_hierarchy_spec(const std::string& factors,
                                       const std::string& distances) {
  std::vector<int> fs;
  for (const std::string& tok : split_colons(factors)) {
    const int64_t f = parse_int(tok);
    if (f > (1LL << 30)) throw Error(ErrorCode::InvalidArgument, "factor too large");
    fs.push_back(static_cast<int>(f));
  }
  std::vector<double> ds;
  for (const std::string& tok : split_colons(distances)) ds.push_back(parse_real(tok));
  return HierarchyTopology(std::move(fs), std::move(ds));
}

void write_mapping(const std::string& path, const Mapping& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  for (int u = 0; u < m.size(); ++u) out << m.pe_of(u) << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write to '" + path + "' failed");
}

Mapping read_mapping(const std::string& path, int expected_n) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for reading");
  std::vector<int> pes;
  std::string line;
  while (next_data_line(in, line)) {
    for (const std::string& tok : tokens_of(line)) {
      const int64_t pe = parse_int(tok);
      if (pe < INT32_MIN || pe > INT32_MAX)
        throw Error(ErrorCode::PeOutOfRange, "pe index " + tok + " out of range");
      pes.push_back(static_cast<int>(pe));
    }
  }
  if (static_cast<int>(pes.size()) != expected_n)
    throw Error(ErrorCode::LengthMismatch,
                "mapping holds " + std::to_string(pes.size()) + " entries, expected " +
                    std::to_string(expected_n));
  return Mapping::from_proc_to_pe(std::move(pes));
}

void write_results(const std::string& path, const std::vector<RunResult>& results,
                   bool append) {
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  for (const RunResult& r : results) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["instance"] = r.instance;
    j["algorithm"] = r.algorithm;
    j["params"] = r.params;
    j["seed"] = r.seed;
    j["objective"] = r.objective;
    j["time_ms"] = r.time_ms;
    j["swaps"] = r.swaps;
    j["pairs_inspected"] = r.pairs_inspected;
    j["passes"] = r.passes;
    out << j.dump() << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write to '" + path + "' failed");
}

std::vector<RunResult> read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for reading");
  std::vector<RunResult> out;
  std::string line;
  int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      if (j.at("schema_version").get<int>() != 1)
        throw Error(ErrorCode::IoFailure, "unsupported schema version");
      RunResult r;
      r.instance = j.at("instance").get<std::string>();
      r.algorithm = j.at("algorithm").get<std::string>();
      for (const auto& [k, v] : j.at("params").items())
        r.params[k] = v.get<std::string>();
      r.seed = j.at("seed").get<uint64_t>();
      r.objective = j.at("objective").get<double>();
      r.time_ms = j.at("time_ms").get<double>();
      r.swaps = j.at("swaps").get<int64_t>();
      r.pairs_inspected = j.at("pairs_inspected").get<int64_t>();
      r.passes = j.at("passes").get<int64_t>();
      out.push_back(std::move(r));
    } catch (const Error&) {
      throw;
    } catch (const std::exception& ex) {
      throw Error(ErrorCode::IoFailure,
                  path + ":" + std::to_string(lineno) + ": " + ex.what());
    }
  }
  return out;
}

}  // namespace qapmap
