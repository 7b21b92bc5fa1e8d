#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fairea/algorithm.hpp"
#include "fairea/evaluation.hpp"
#include "fairea/synthgen.hpp"

namespace fairea {

struct NetworkSource {
  enum class Kind { scale_free, functional_org, divisional_org, files };
  Kind kind = Kind::scale_free;
  // Generator parameters.
  int nodes = 1000;
  int edges_per_node = 4;
  double minority_fraction = 0.31;
  double target_assortativity = 0.39;
  double plant_tolerance = 0.02;
  std::uint64_t seed = 0;
  // File ingestion (kind == files).
  std::string edges_file;
  std::string nodes_file;
};

AttributedGraph build_network(const NetworkSource& source);

struct ExperimentConfig {
  NetworkSource network;
  std::vector<double> open_fractions{0.10};
  std::vector<PoolMode> pool_modes{PoolMode::exact_copy};
  std::vector<FitnessMode> fitness_modes{FitnessMode::f1};
  int qualified_per_candidate = 4;
  std::vector<std::string> methods{"fairea", "random", "hungarian"};
  int trials = 100;
  std::vector<ThresholdSpec> thresholds;  // non-empty = isolation sweep levels
  double oracle_lambda = 1.0;
  std::uint64_t master_seed = 0;
};

struct TrialRecord {
  int trial = 0;
  bool ok = false;
  std::string error;
  MetricReport metrics;
  int notified_teams = 0;  // fairea only
  double seconds = 0.0;    // in-memory only; report files omit timing
};

struct MethodSummary {
  int ok = 0;
  int failed = 0;
  int pia_not_applicable = 0;
  double pif_mean = 0.0;
  double pif_std = 0.0;
  double pia_mean = 0.0;  // over applicable trials
  double pia_std = 0.0;
  std::optional<double> ac_after_mean;
  std::optional<double> isolation_mean;
  double notified_teams_mean = 0.0;
  double wall_clock_seconds = 0.0;  // in-memory only; report files omit timing
};

struct CellReport {
  double open_fraction = 0.0;
  PoolMode pool_mode = PoolMode::exact_copy;
  FitnessMode fitness_mode = FitnessMode::f1;
  std::optional<ThresholdSpec> threshold;
  std::map<std::string, std::vector<TrialRecord>> trials;  // per method, trial order
  std::map<std::string, MethodSummary> summary;
};

struct ExperimentReport {
  ExperimentConfig config;
  int network_nodes = 0;
  std::size_t network_edges = 0;
  std::optional<double> network_assortativity;
  std::vector<CellReport> cells;
};

// Runs the full scenario grid. Per trial: derive the trial seed from the
// master seed and trial index, sample a scenario, compute the fitness
// bounds and before-assortativity once, then run every requested method.
// Method errors are recorded per trial; a method failing on more than
// half the trials of a cell fails the experiment. Trials are pure
// functions of (config, trial index), so `jobs` > 1 changes nothing but
// wall-clock time.
ExperimentReport run_experiment(const ExperimentConfig& config, int jobs = 1);

// One cell per scenario and threshold level, fairea only: reports
// after-assortativity, isolation score, fitness improvement, and
// notification counts per level.
ExperimentReport isolation_sweep(const ExperimentConfig& config, int jobs = 1);

}  // namespace fairea
