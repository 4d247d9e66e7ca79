#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qapmap/graph.hpp"
#include "qapmap/io.hpp"
#include "qapmap/partition.hpp"
#include "qapmap/topology.hpp"

namespace qapmap {

/// Communication model built from an application graph: partition the
/// application into n balanced blocks and return the quotient graph (one
/// vertex per block, edge weight between two blocks equal to their total cut
/// weight, vertex weights all 1).
CommGraph build_model(const WeightedGraph& app, int n, uint64_t seed,
                      const PartitionerFn& partitioner = default_partitioner());

struct ModelInstance {
  std::string name;
  CommGraph graph;
};

enum class ConstructKind { Identity, Random, MuellerMerbach, GreedyAllC, TopDown, BottomUp };
enum class RefineKind { None, N2, Np, Ncd };

struct AlgorithmSpec {
  std::string name;
  ConstructKind construct = ConstructKind::MuellerMerbach;
  RefineKind refine = RefineKind::None;
  int d = 1;           // Ncd radius
  int block_size = 0;  // Np block width; 0 = default
  bool use_slow_gain = false;
};

/// Runs the full cross product models x topologies x algorithms x seeds.
/// Combinations whose model size differs from the topology's PE count are
/// skipped with a warning on stderr. Construction and local search are timed
/// separately (reported in params as construct_ms / refine_ms; time_ms is
/// their sum). When results_path is nonempty every record is also appended
/// there as it is produced.
std::vector<RunResult> run_sweep(const std::vector<ModelInstance>& models,
                                 const std::vector<HierarchyTopology>& topologies,
                                 const std::vector<AlgorithmSpec>& algorithms,
                                 const std::vector<uint64_t>& seeds,
                                 const std::string& results_path = "");

/// Performance-profile curves: for every algorithm and instance, the ratio
/// of its per-instance score to the reference algorithm's, sorted ascending.
/// Objective scores aggregate seeds by geometric mean, times by median.
struct ProfileCurves {
  std::map<std::string, std::vector<double>> objective;
  std::map<std::string, std::vector<double>> time;
};

ProfileCurves performance_profile(const std::vector<RunResult>& results,
                                  const std::string& reference_alg);

/// One CSV per algorithm and metric, header "rank,ratio".
void write_profile_csv(const std::string& out_dir, const ProfileCurves& curves);

struct SpeedupRow {
  int n = 0;
  double avg_density = 0.0;  // m/n over the instances of this size
  double t_slow_ms = 0.0;
  double t_fast_ms = 0.0;
  double speedup = 0.0;
};

/// Table-style speedup measurement: for every instance, run Np local search
/// from the Mueller-Merbach start twice under identical configurations, once
/// with O(n) dense-scan gains and once with the O(d_u+d_v) delta machinery.
/// Final permutations must agree exactly (a mismatch aborts: it indicates a
/// delta-update bug). Rows aggregate instances by size; times sum over
/// instances and repetitions. models[i] is paired with topologies[i];
/// block_size 0 picks max(16, n/64).
std::vector<SpeedupRow> speedup_experiment(const std::vector<ModelInstance>& models,
                                           const std::vector<HierarchyTopology>& topologies,
                                           int repetitions = 3, int block_size = 0);

void write_speedup_csv(const std::string& path, const std::vector<SpeedupRow>& rows);

/// Desk-scale defaults: hierarchy 4:16:(n/64) with distances 1:10:100.
HierarchyTopology desk_topology(int n);

/// Desk-scale model: random geometric graph with roughly 16 application
/// vertices per model vertex, partitioned into n blocks.
ModelInstance make_rgg_model(int n, uint64_t seed);

double geometric_mean(const std::vector<double>& xs);
double median(std::vector<double> xs);

}  // namespace qapmap
