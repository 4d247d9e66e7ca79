#include "qapmap/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include "qapmap/construct.hpp"
#include "qapmap/error.hpp"
#include "qapmap/generators.hpp"
#include "qapmap/local_search.hpp"
#include "qapmap/objective.hpp"

namespace qapmap {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

uint64_t mix_seed(uint64_t seed, uint64_t salt) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string topology_label(const HierarchyTopology& t) {
  std::ostringstream ss;
  for (int i = 0; i < t.levels(); ++i) {
    if (i) ss << ':';
    ss << t.factor(i);
  }
  return ss.str();
}

std::string ms_string(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", ms);
  return buf;
}

Mapping run_construct(const AlgorithmSpec& alg, const CommGraph& g,
                      const HierarchyTopology& t, uint64_t seed) {
  switch (alg.construct) {
    case ConstructKind::Identity:
      return construct_identity(g.n);
    case ConstructKind::Random:
      return construct_random(g.n, seed);
    case ConstructKind::MuellerMerbach:
      return construct_mueller_merbach(g, t);
    case ConstructKind::GreedyAllC:
      return construct_greedy_all_c(g, t);
    case ConstructKind::TopDown:
      return construct_top_down(g, t, seed);
    case ConstructKind::BottomUp:
      return construct_bottom_up(g, t, seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown construction kind");
}

}  // namespace

CommGraph build_model(const WeightedGraph& app, int n, uint64_t seed,
                      const PartitionerFn& partitioner) {
  const Partition p = partitioner(app, n, seed);
  CommGraph model = contract(app, p);
  std::fill(model.vwgt.begin(), model.vwgt.end(), 1.0);  // blocks count as one process
  return model;
}

std::vector<RunResult> run_sweep(const std::vector<ModelInstance>& models,
                                 const std::vector<HierarchyTopology>& topologies,
                                 const std::vector<AlgorithmSpec>& algorithms,
                                 const std::vector<uint64_t>& seeds,
                                 const std::string& results_path) {
  std::vector<RunResult> out;
  for (const ModelInstance& model : models) {
    for (const HierarchyTopology& topo : topologies) {
      if (topo.n_pes() != model.graph.n) {
        std::cerr << "sweep: skipping '" << model.name << "' with hierarchy "
                  << topology_label(topo) << " (" << model.graph.n << " processes vs "
                  << topo.n_pes() << " pes)\n";
        continue;
      }
      const std::string instance = model.name + "@" + topology_label(topo);
      for (const AlgorithmSpec& alg : algorithms) {
        for (const uint64_t seed : seeds) {
          const auto c0 = Clock::now();
          Mapping m = run_construct(alg, model.graph, topo, seed);
          const double construct_ms = elapsed_ms(c0);

          ContribTable ct = evaluate_full(model.graph, topo, m);
          SearchStats stats;
          double refine_ms = 0.0;
          if (alg.refine != RefineKind::None) {
            SearchConfig cfg;
            cfg.neighborhood = alg.refine == RefineKind::N2   ? Neighborhood::N2
                               : alg.refine == RefineKind::Np ? Neighborhood::Np
                                                              : Neighborhood::Ncd;
            cfg.d = alg.d;
            cfg.block_size = alg.block_size;
            cfg.seed = seed;
            cfg.use_slow_gain = alg.use_slow_gain;
            const auto r0 = Clock::now();
            if (alg.use_slow_gain) {
              const DenseQap dense = DenseQap::build(model.graph, topo);
              stats = run_search(model.graph, topo, m, ct, cfg, &dense);
            } else {
              stats = run_search(model.graph, topo, m, ct, cfg);
            }
            refine_ms = elapsed_ms(r0);
          }

          RunResult r;
          r.instance = instance;
          r.algorithm = alg.name;
          r.params["construct_ms"] = ms_string(construct_ms);
          r.params["refine_ms"] = ms_string(refine_ms);
          if (alg.refine == RefineKind::Np)
            r.params["block_size"] = std::to_string(alg.block_size);
          if (alg.refine == RefineKind::Ncd) r.params["d"] = std::to_string(alg.d);
          if (alg.use_slow_gain) r.params["slow_gain"] = "1";
          r.seed = seed;
          r.objective = ct.total;
          r.time_ms = construct_ms + refine_ms;
          r.swaps = stats.swaps;
          r.pairs_inspected = stats.pairs_inspected;
          r.passes = stats.passes;
          if (!results_path.empty()) write_results(results_path, {r}, true);
          out.push_back(std::move(r));
        }
      }
    }
  }
  return out;
}

ProfileCurves performance_profile(const std::vector<RunResult>& results,
                                  const std::string& reference_alg) {
  // per algorithm and instance: geometric mean of objectives, median of times
  std::map<std::string, std::map<std::string, std::vector<double>>> obj_runs, time_runs;
  for (const RunResult& r : results) {
    obj_runs[r.algorithm][r.instance].push_back(r.objective);
    time_runs[r.algorithm][r.instance].push_back(r.time_ms);
  }
  if (obj_runs.find(reference_alg) == obj_runs.end())
    throw Error(ErrorCode::InvalidArgument,
                "reference algorithm '" + reference_alg + "' has no runs");

  std::map<std::string, std::map<std::string, double>> obj_score, time_score;
  for (const auto& [alg, by_instance] : obj_runs) {
    for (const auto& [inst, xs] : by_instance) obj_score[alg][inst] = geometric_mean(xs);
  }
  for (const auto& [alg, by_instance] : time_runs) {
    for (const auto& [inst, xs] : by_instance) time_score[alg][inst] = median(xs);
  }

  auto ratios = [](const std::map<std::string, double>& alg_scores,
                   const std::map<std::string, double>& ref_scores) {
    std::vector<double> rs;
    for (const auto& [inst, score] : alg_scores) {
      const auto ref = ref_scores.find(inst);
      if (ref == ref_scores.end()) continue;
      if (ref->second > 0.0) {
        rs.push_back(score / ref->second);
      } else {
        rs.push_back(score > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
      }
    }
    std::sort(rs.begin(), rs.end());
    return rs;
  };

  ProfileCurves curves;
  const auto& obj_ref = obj_score[reference_alg];
  const auto& time_ref = time_score[reference_alg];
  for (const auto& [alg, scores] : obj_score) curves.objective[alg] = ratios(scores, obj_ref);
  for (const auto& [alg, scores] : time_score) curves.time[alg] = ratios(scores, time_ref);
  return curves;
}

namespace {

std::string safe_name(const std::string& s) {
  std::string out;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_';
    out.push_back(ok ? c : '_');
  }
  return out;
}

void write_curve_csv(const std::string& path, const std::vector<double>& curve) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  out << "rank,ratio\n";
  for (size_t i = 0; i < curve.size(); ++i) out << i + 1 << ',' << curve[i] << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write to '" + path + "' failed");
}

}  // namespace

void write_profile_csv(const std::string& out_dir, const ProfileCurves& curves) {
  std::filesystem::create_directories(out_dir);
  for (const auto& [alg, curve] : curves.objective)
    write_curve_csv(out_dir + "/profile_objective_" + safe_name(alg) + ".csv", curve);
  for (const auto& [alg, curve] : curves.time)
    write_curve_csv(out_dir + "/profile_time_" + safe_name(alg) + ".csv", curve);
}

std::vector<SpeedupRow> speedup_experiment(const std::vector<ModelInstance>& models,
                                           const std::vector<HierarchyTopology>& topologies,
                                           int repetitions, int block_size) {
  if (models.size() != topologies.size())
    throw Error(ErrorCode::SizeMismatch, "need one hierarchy per model");
  if (repetitions < 1)
    throw Error(ErrorCode::InvalidArgument, "repetitions must be positive");

  struct Agg {
    int count = 0;
    double density = 0.0;
    double t_slow = 0.0;
    double t_fast = 0.0;
  };
  std::map<int, Agg> by_size;

  for (size_t i = 0; i < models.size(); ++i) {
    const CommGraph& g = models[i].graph;
    const HierarchyTopology& t = topologies[i];
    if (t.n_pes() != g.n)
      throw Error(ErrorCode::SizeMismatch, "hierarchy does not fit model '" +
                                               models[i].name + "'");
    const int bs = block_size > 0 ? block_size : std::max(16, g.n / 64);

    const Mapping start = construct_mueller_merbach(g, t);
    const DenseQap dense = DenseQap::build(g, t);

    Agg& agg = by_size[g.n];
    ++agg.count;
    agg.density += static_cast<double>(g.m) / g.n;

    for (int rep = 0; rep < repetitions; ++rep) {
      SearchConfig cfg;
      cfg.neighborhood = Neighborhood::Np;
      cfg.block_size = bs;

      Mapping m_fast = start;
      ContribTable ct_fast = evaluate_full(g, t, m_fast);
      const SearchStats s_fast = search_np(g, t, m_fast, ct_fast, cfg);

      cfg.use_slow_gain = true;
      Mapping m_slow = start;
      ContribTable ct_slow = evaluate_full(g, t, m_slow);
      const SearchStats s_slow = search_np(g, t, m_slow, ct_slow, cfg, &dense);

      if (!(m_fast == m_slow) || ct_fast.total != ct_slow.total)
        throw Error(ErrorCode::InvalidArgument,
                    "slow and fast gain paths diverged on '" + models[i].name +
                        "'; the delta update is broken");
      agg.t_fast += s_fast.wall_ms;
      agg.t_slow += s_slow.wall_ms;
    }
  }

  std::vector<SpeedupRow> rows;
  for (const auto& [n, agg] : by_size) {
    SpeedupRow row;
    row.n = n;
    row.avg_density = agg.density / agg.count;
    row.t_slow_ms = agg.t_slow;
    row.t_fast_ms = agg.t_fast;
    row.speedup = agg.t_slow / std::max(agg.t_fast, 1e-9);
    rows.push_back(row);
  }
  return rows;
}

void write_speedup_csv(const std::string& path, const std::vector<SpeedupRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  out << "n,avg_density,t_slow_ms,t_fast_ms,speedup\n";
  for (const SpeedupRow& r : rows) {
    out << r.n << ',' << r.avg_density << ',' << r.t_slow_ms << ',' << r.t_fast_ms << ','
        << r.speedup << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write to '" + path + "' failed");
}

HierarchyTopology desk_topology(int n) {
  if (n % 64 != 0 || n < 64)
    throw Error(ErrorCode::DivisibilityViolation,
                "desk hierarchy 4:16:(n/64) needs n to be a positive multiple of 64");
  return HierarchyTopology({4, 16, n / 64}, {1.0, 10.0, 100.0});
}

ModelInstance make_rgg_model(int n, uint64_t seed) {
  if (n < 1 || (n & (n - 1)) != 0)
    throw Error(ErrorCode::InvalidArgument, "model size must be a power of two");
  int exponent = 0;
  while ((1 << exponent) < n) ++exponent;
  exponent += 4;  // about 16 application vertices per model vertex

  const WeightedGraph app = gen_rgg(exponent, seed);
  ModelInstance model;
  model.graph = build_model(app, n, mix_seed(seed, 0x6d0de1));
  std::ostringstream name;
  name << "rgg" << exponent << "-n" << n << "-s" << seed;
  model.name = name.str();
  return model;
}

double geometric_mean(const std::vector<double>& xs) {
  if (xs.empty()) throw Error(ErrorCode::InvalidArgument, "geometric mean of nothing");
  double log_sum = 0.0;
  for (double x : xs) {
    if (x < 0.0)
      throw Error(ErrorCode::InvalidArgument, "geometric mean needs nonnegative values");
    if (x == 0.0) return 0.0;
    log_sum += std::log(x);
  }
  return std::exp(log_sum / static_cast<double>(xs.size()));
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw Error(ErrorCode::InvalidArgument, "median of nothing");
  std::sort(xs.begin(), xs.end());
  const size_t mid = xs.size() / 2;
  if (xs.size() % 2 == 1) return xs[mid];
  return 0.5 * (xs[mid - 1] + xs[mid]);
}

}  // namespace qapmap
