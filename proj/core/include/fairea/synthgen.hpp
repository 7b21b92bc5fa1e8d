#pragma once

#include <cstdint>
#include <string>

#include "fairea/instance.hpp"

namespace fairea {

// Layout of a synthetic organizational chart: units of near-clique teams
// stitched together by a hierarchy tree over designated leads. The
// functional preset follows a 6-teams / 12-sub-teams chart, the
// divisional preset a 3-divisions / 40-teams chart.
struct OrgChartSpec {
  enum class Layout { functional, divisional };
  Layout layout = Layout::functional;
  int units = 6;               // teams (functional) or divisions (divisional)
  int teams_per_unit = 2;      // sub-teams per team, or teams per division
  int team_size = 24;          // nodes per finest team
  double intra_density = 0.8;  // fraction of within-team pairs connected
  double minority_team_fraction = 0.3;  // fraction of teams labeled minority

  static OrgChartSpec functional_preset();   // ~288 nodes, ~2650 edges
  static OrgChartSpec divisional_preset();   // ~280 nodes, ~880 edges
};

// Builds the chart: per-team spanning cycle plus random pairs up to the
// requested density (so each team's induced subgraph is connected by
// construction), leads wired up the hierarchy tree, whole teams assigned
// to one class. Nodes carry team and level ("lead"/"member") annotations.
AttributedGraph generate_org_network(const OrgChartSpec& spec, std::uint64_t seed);

// Growing scale-free network with triad formation (preferential
// attachment plus tunable clustering). Produces edges_per_node * (n -
// edges_per_node) edges, heavy-tailed degrees, connected.
AttributedGraph generate_scale_free(int nodes, int edges_per_node, std::uint64_t seed,
                                    double triad_probability = 0.5);

// Plants binary class labels with exactly round(n * minority_fraction)
// minority nodes, then hill-climbs label swaps (one majority / one
// minority per step, accepted when |r - target| strictly decreases)
// until |r - target| <= tolerance. Topology is untouched. Throws
// planting_error carrying the best achieved r when the budget runs out.
AttributedGraph plant_attributes(const AttributedGraph& graph, double minority_fraction,
                                 double target_assortativity, double tolerance,
                                 std::uint64_t seed, int max_steps = 200000);

enum class PoolMode { exact_copy, double_copy };
enum class FitnessMode { f1, f2 };

struct ScenarioSpec {
  double open_fraction = 0.1;  // paper grid: 0.10 / 0.20 / 0.30
  PoolMode pool_mode = PoolMode::exact_copy;
  FitnessMode fitness_mode = FitnessMode::f1;
  int qualified_per_candidate = 4;
  std::uint64_t seed = 0;
};

// Opens round(open_fraction * n) random positions, builds the candidate
// pool from the removed occupants (one or two copies per opened node),
// and samples the fitness table: F1 qualifies each candidate for
// `qualified_per_candidate` uniformly chosen open positions, F2 for the
// ones nearest its origin by hop count (ties broken by position id).
// Weights are uniform in (0, 1]. Re-samples (bounded retries) until the
// instance admits a complete matching.
AssignmentInstance sample_scenario(const AttributedGraph& graph, const ScenarioSpec& spec);

std::string to_string(PoolMode mode);
std::string to_string(FitnessMode mode);
PoolMode pool_mode_from_string(const std::string& text);
FitnessMode fitness_mode_from_string(const std::string& text);

}  // namespace fairea
