#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairea/instance.hpp"

namespace fairea {

// Per-matching metrics. Optional fields are absent when the trial
// cannot define them: degenerate mixing, |AC_b| ~ 0, or missing team
// annotations.
struct MetricReport {
  double fit_score = 0.0;  // FS_a
  double fit_lower = 0.0;  // FS_l
  double fit_upper = 0.0;  // FS_h
  double pif = 0.0;        // percentage improvement in fitness
  std::optional<double> ac_before;  // assortativity of the filled-only subgraph
  std::optional<double> ac_after;   // assortativity after assignment
  std::optional<double> pia;        // percentage improvement in assortativity
  std::optional<double> isolation;  // mean minority fraction over teams
};

// Uniform-ish complete matching over qualified pairs: random position
// order, random qualified candidate per position, restart on dead ends,
// falling back to a randomized max-cardinality matching after the
// restart budget. Deterministic per seed.
Matching random_baseline(const AssignmentInstance& instance, std::uint64_t seed);

// One-shot maximum-weight matching with static weights
// fitness + diversity score, both computed against the initial graph.
Matching hungarian_baseline(const AssignmentInstance& instance);

struct OracleResult {
  Matching best;
  double best_fitness = 0.0;
  double best_abs_assortativity = 0.0;
  // Non-dominated (fitness, |assortativity after|) outcomes over all
  // complete matchings, sorted by descending fitness.
  std::vector<std::pair<double, double>> pareto_outcomes;
};

// Enumerates every complete matching and returns the one maximizing
// lambda * normalized fitness - (1 - lambda) * |assortativity after|.
// Throws scale_error("oracle scale exceeded") when the enumeration bound
// estimate passes 10^7. Small instances only; this is the exhaustive
// stand-in for a nonlinear solver.
OracleResult exact_oracle(const AssignmentInstance& instance, double lambda);

// (FS_a - FS_l) / (FS_h - FS_l) * 100; 100 when all matchings tie.
// Throws when FS_a falls outside [FS_l, FS_h] beyond tolerance, which
// signals a matcher bug.
double percentage_improvement_fitness(double fs_a, double fs_l, double fs_h);

// (|AC_b| - |AC_a|) / |AC_b| * 100. Throws
// degenerate_error("baseline already perfectly diverse") when
// |AC_b| < 1e-12; the harness records such trials as not applicable.
double percentage_improvement_assortativity(double ac_b, double ac_a);

// Mean over teams of min(per-class count) / team size. Requires every
// node to carry a team and every member to be class-resolved.
double isolation_score(const AttributedGraph& graph);

}  // namespace fairea
