// Command line front end: map / eval / gen / bench subcommands over the
// qapmap library. Human-readable output goes to stdout; graphs, mappings,
// result records, and CSV tables are written to files.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qapmap/construct.hpp"
#include "qapmap/error.hpp"
#include "qapmap/generators.hpp"
#include "qapmap/harness.hpp"
#include "qapmap/io.hpp"
#include "qapmap/local_search.hpp"
#include "qapmap/objective.hpp"

namespace {

using namespace qapmap;

std::string obj_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  size_t start = 0;
  while (start <= s.size()) {
    const size_t comma = s.find(',', start);
    const std::string tok = s.substr(start, comma - start);
    if (tok.empty()) throw Error(ErrorCode::InvalidArgument, "empty field in '" + s + "'");
    out.push_back(std::stoi(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<uint64_t> parse_seed_list(const std::string& s) {
  std::vector<uint64_t> out;
  for (int v : parse_int_list(s)) out.push_back(static_cast<uint64_t>(v));
  return out;
}

ConstructKind construct_kind(const std::string& name) {
  static const std::map<std::string, ConstructKind> kinds = {
      {"identity", ConstructKind::Identity},   {"random", ConstructKind::Random},
      {"mm", ConstructKind::MuellerMerbach},   {"greedyallc", ConstructKind::GreedyAllC},
      {"topdown", ConstructKind::TopDown},     {"bottomup", ConstructKind::BottomUp},
  };
  return kinds.at(name);
}

struct MapArgs {
  std::string graph, factors, distances, out, json;
  std::string construct = "mm";
  std::string refine = "none";
  int d = 1;
  int blocksize = 0;
  uint64_t seed = 0;
};

void do_map(const MapArgs& a) {
  const WeightedGraph g = read_metis(a.graph, true);
  const HierarchyTopology t = parse_hierarchy_spec(a.factors, a.distances);

  const auto c0 = std::chrono::steady_clock::now();
  Mapping m = [&] {
    switch (construct_kind(a.construct)) {
      case ConstructKind::Identity: return construct_identity(g.n);
      case ConstructKind::Random: return construct_random(g.n, a.seed);
      case ConstructKind::MuellerMerbach: return construct_mueller_merbach(g, t);
      case ConstructKind::GreedyAllC: return construct_greedy_all_c(g, t);
      case ConstructKind::TopDown: return construct_top_down(g, t, a.seed);
      case ConstructKind::BottomUp: return construct_bottom_up(g, t, a.seed);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown construction");
  }();
  const double construct_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - c0)
          .count();

  ContribTable ct = evaluate_full(g, t, m);
  const double start_objective = ct.total;
  SearchStats stats;
  if (a.refine != "none") {
    SearchConfig cfg;
    cfg.neighborhood = a.refine == "n2"   ? Neighborhood::N2
                       : a.refine == "np" ? Neighborhood::Np
                                          : Neighborhood::Ncd;
    cfg.d = a.d;
    cfg.block_size = a.blocksize;
    cfg.seed = a.seed;
    stats = run_search(g, t, m, ct, cfg);
  }

  std::printf("instance %s  n=%d  m=%lld\n",
              std::filesystem::path(a.graph).stem().string().c_str(), g.n,
              static_cast<long long>(g.m));
  std::printf("construct %s  objective %s  (%.3f ms)\n", a.construct.c_str(),
              obj_string(start_objective).c_str(), construct_ms);
  if (a.refine != "none") {
    std::printf("refine %s  swaps %lld  pairs %lld  passes %lld  (%.3f ms)\n",
                a.refine.c_str(), static_cast<long long>(stats.swaps),
                static_cast<long long>(stats.pairs_inspected),
                static_cast<long long>(stats.passes), stats.wall_ms);
  }

  if (!a.json.empty()) {
    RunResult r;
    r.instance = std::filesystem::path(a.graph).stem().string();
    r.algorithm = a.construct + (a.refine == "none" ? "" : "-" + a.refine);
    r.params["construct_ms"] = obj_string(construct_ms);
    r.params["refine_ms"] = obj_string(stats.wall_ms);
    r.seed = a.seed;
    r.objective = ct.total;
    r.time_ms = construct_ms + stats.wall_ms;
    r.swaps = stats.swaps;
    r.pairs_inspected = stats.pairs_inspected;
    r.passes = stats.passes;
    write_results(a.json, {r}, true);
  }
  if (!a.out.empty()) {
    write_mapping(a.out, m);
    std::printf("mapping %s\n", a.out.c_str());
  }
  std::printf("objective %s\n", obj_string(ct.total).c_str());
}

struct EvalArgs {
  std::string graph, factors, distances, mapping;
};

void do_eval(const EvalArgs& a) {
  const WeightedGraph g = read_metis(a.graph, true);
  const HierarchyTopology t = parse_hierarchy_spec(a.factors, a.distances);
  const Mapping m = read_mapping(a.mapping, g.n);
  const ContribTable ct = evaluate_full(g, t, m);
  std::printf("objective %s\n", obj_string(ct.total).c_str());
}

struct GenArgs {
  std::string kind, app, out;
  int x = 10;
  int rows = 8;
  int cols = 8;
  int n = 64;
  uint64_t seed = 1;
};

void do_gen(const GenArgs& a) {
  WeightedGraph g;
  if (a.kind == "rgg") {
    g = gen_rgg(a.x, a.seed);
  } else if (a.kind == "grid") {
    g = gen_grid(a.rows, a.cols);
  } else {
    if (a.app.empty())
      throw Error(ErrorCode::InvalidArgument, "--app is required for --kind model");
    const WeightedGraph app = read_metis(a.app, true);
    g = build_model(app, a.n, a.seed);
  }
  write_metis(a.out, g);
  std::printf("wrote %s  n=%d  m=%lld\n", a.out.c_str(), g.n, static_cast<long long>(g.m));
}

struct BenchArgs {
  std::string suite;
  std::string sizes = "64,128,256";
  std::string seeds = "1,2,3";
  std::string out_dir = "bench_out";
  int reps = 3;
};

std::vector<AlgorithmSpec> quality_algorithms() {
  std::vector<AlgorithmSpec> algs;
  algs.push_back({"identity", ConstructKind::Identity});
  algs.push_back({"random", ConstructKind::Random});
  algs.push_back({"mm", ConstructKind::MuellerMerbach});
  algs.push_back({"greedyallc", ConstructKind::GreedyAllC});
  algs.push_back({"topdown", ConstructKind::TopDown});
  algs.push_back({"bottomup", ConstructKind::BottomUp});
  AlgorithmSpec a;
  a = {"mm-n2", ConstructKind::MuellerMerbach, RefineKind::N2};
  algs.push_back(a);
  a = {"topdown-n2", ConstructKind::TopDown, RefineKind::N2};
  algs.push_back(a);
  a = {"mm-np", ConstructKind::MuellerMerbach, RefineKind::Np};
  algs.push_back(a);
  a = {"mm-nc1", ConstructKind::MuellerMerbach, RefineKind::Ncd, 1};
  algs.push_back(a);
  a = {"mm-nc10", ConstructKind::MuellerMerbach, RefineKind::Ncd, 10};
  algs.push_back(a);
  return algs;
}

std::vector<RunResult> run_quality_sweep(const BenchArgs& a, const std::string& results_path) {
  const std::vector<int> sizes = parse_int_list(a.sizes);
  const std::vector<uint64_t> seeds = parse_seed_list(a.seeds);
  const std::vector<AlgorithmSpec> algs = quality_algorithms();
  std::vector<RunResult> all;
  for (int n : sizes) {
    std::vector<ModelInstance> models;
    for (uint64_t ms : {uint64_t{1}, uint64_t{2}}) models.push_back(make_rgg_model(n, ms));
    const std::vector<HierarchyTopology> topos = {desk_topology(n)};
    std::vector<RunResult> part = run_sweep(models, topos, algs, seeds, results_path);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

void do_bench(const BenchArgs& a) {
  std::filesystem::create_directories(a.out_dir);
  if (a.suite == "quality" || a.suite == "profile") {
    const std::string results_path = a.out_dir + "/results.jsonl";
    std::filesystem::remove(results_path);
    const std::vector<RunResult> results = run_quality_sweep(a, results_path);

    std::map<std::string, std::vector<double>> obj_by_alg, time_by_alg;
    for (const RunResult& r : results) {
      obj_by_alg[r.algorithm].push_back(r.objective);
      time_by_alg[r.algorithm].push_back(r.time_ms);
    }
    std::printf("%-12s %16s %12s\n", "algorithm", "gm objective", "median ms");
    for (const auto& [alg, objs] : obj_by_alg) {
      std::printf("%-12s %16.1f %12.3f\n", alg.c_str(), geometric_mean(objs),
                  median(time_by_alg[alg]));
    }
    std::printf("records %s\n", results_path.c_str());

    if (a.suite == "profile") {
      const ProfileCurves curves = performance_profile(results, "mm");
      write_profile_csv(a.out_dir, curves);
      std::printf("profiles %s (%zu algorithms)\n", a.out_dir.c_str(),
                  curves.objective.size());
    }
  } else {  // speedup
    std::vector<ModelInstance> models;
    std::vector<HierarchyTopology> topos;
    for (int n : parse_int_list(a.sizes)) {
      for (uint64_t ms : {uint64_t{1}, uint64_t{2}}) {
        models.push_back(make_rgg_model(n, ms));
        topos.push_back(desk_topology(n));
      }
    }
    const std::vector<SpeedupRow> rows = speedup_experiment(models, topos, a.reps, 0);
    const std::string csv = a.out_dir + "/speedup.csv";
    write_speedup_csv(csv, rows);
    std::printf("%6s %10s %12s %12s %10s\n", "n", "density", "slow ms", "fast ms", "speedup");
    for (const SpeedupRow& r : rows) {
      std::printf("%6d %10.2f %12.3f %12.3f %10.2f\n", r.n, r.avg_density, r.t_slow_ms,
                  r.t_fast_ms, r.speedup);
    }
    std::printf("table %s\n", csv.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"topology-aware process mapping toolkit"};
  app.require_subcommand(1);

  MapArgs ma;
  CLI::App* map_cmd = app.add_subcommand("map", "construct and refine a process mapping");
  map_cmd->add_option("--graph", ma.graph, "communication graph (METIS format)")->required();
  map_cmd->add_option("--hierarchy", ma.factors, "group factors, innermost first (e.g. 4:16:2)")
      ->required();
  map_cmd->add_option("--distances", ma.distances, "level distances (e.g. 1:10:100)")
      ->required();
  map_cmd->add_option("--construct", ma.construct, "initial mapping")
      ->check(CLI::IsMember({"identity", "random", "mm", "greedyallc", "topdown", "bottomup"}));
  map_cmd->add_option("--refine", ma.refine, "local search neighborhood")
      ->check(CLI::IsMember({"none", "n2", "np", "ncd"}));
  map_cmd->add_option("--d", ma.d, "hop radius for --refine ncd");
  map_cmd->add_option("--blocksize", ma.blocksize, "PE block width for --refine np");
  map_cmd->add_option("--seed", ma.seed, "seed for randomized steps");
  map_cmd->add_option("--out", ma.out, "write the final mapping here");
  map_cmd->add_option("--json", ma.json, "append a JSON run record here");
  map_cmd->callback([&] { do_map(ma); });

  EvalArgs ea;
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a mapping file");
  eval_cmd->add_option("--graph", ea.graph, "communication graph (METIS format)")->required();
  eval_cmd->add_option("--hierarchy", ea.factors, "group factors")->required();
  eval_cmd->add_option("--distances", ea.distances, "level distances")->required();
  eval_cmd->add_option("--mapping", ea.mapping, "mapping file, one PE per line")->required();
  eval_cmd->callback([&] { do_eval(ea); });

  GenArgs ga;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate graphs and models");
  gen_cmd->add_option("--kind", ga.kind, "rgg, grid, or model")
      ->required()
      ->check(CLI::IsMember({"rgg", "grid", "model"}));
  gen_cmd->add_option("--x", ga.x, "rgg size exponent (2^x points)");
  gen_cmd->add_option("--rows", ga.rows, "grid rows");
  gen_cmd->add_option("--cols", ga.cols, "grid columns");
  gen_cmd->add_option("--app", ga.app, "application graph for --kind model");
  gen_cmd->add_option("--n", ga.n, "model size (blocks) for --kind model");
  gen_cmd->add_option("--seed", ga.seed, "generator seed");
  gen_cmd->add_option("--out", ga.out, "output METIS file")->required();
  gen_cmd->callback([&] { do_gen(ga); });

  BenchArgs ba;
  CLI::App* bench_cmd = app.add_subcommand("bench", "run benchmark suites");
  bench_cmd->add_option("--suite", ba.suite, "quality, speedup, or profile")
      ->required()
      ->check(CLI::IsMember({"quality", "speedup", "profile"}));
  bench_cmd->add_option("--sizes", ba.sizes, "comma separated model sizes");
  bench_cmd->add_option("--seeds", ba.seeds, "comma separated run seeds");
  bench_cmd->add_option("--out-dir", ba.out_dir, "directory for result files");
  bench_cmd->add_option("--reps", ba.reps, "repetitions per speedup instance");
  bench_cmd->callback([&] { do_bench(ba); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const qapmap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return (e.code() == ErrorCode::SizeMismatch ||
            e.code() == ErrorCode::DivisibilityViolation)
               ? 2
               : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
