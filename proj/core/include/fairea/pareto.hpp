#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fairea/bipartite.hpp"
#include "fairea/graph.hpp"

namespace fairea {

// One qualified (open position, candidate) pair with its two scores.
struct ScoredPair {
  std::string position;
  std::string candidate;
  double fitness = 0.0;    // the pair's fitness weight, > 0
  double diversity = 0.0;  // in [0, 1]
};

// Non-dominated front index per pair; level 1 is the first front.
struct FrontLayering {
  std::vector<ScoredPair> pairs;  // input order preserved
  std::vector<int> level;         // aligned with pairs, >= 1
  int max_level = 0;
};

// Binary diversity score (k = 2 only): 1 iff the position has strictly
// fewer resolved neighbors of the candidate's class than of the other
// class; ties and empty neighborhoods give 0. Throws error("use
// multi-class score") when k != 2.
double diversity_score_binary(const AttributedGraph& graph, const std::string& open_position,
                              int candidate_class);
double diversity_score_binary_counts(const std::vector<int>& neighbor_counts, int candidate_class);

// Multi-class diversity score (ct - ca) / ct over resolved neighbors;
// 0 when the position has no resolved neighbors.
double diversity_score_multiclass(const AttributedGraph& graph, const std::string& open_position,
                                  int candidate_class);
double diversity_score_multiclass_counts(const std::vector<int>& neighbor_counts,
                                         int candidate_class);

// Front index per point under weak domination: (x1,y1) is dominated by
// (x2,y2) iff x2 >= x1 and y2 >= y1 with at least one strict. Duplicate
// points share a level. O(n log n) sweep; tests pin it against the
// O(n^2) pairwise brute force.
std::vector<int> pareto_level_indices(const std::vector<std::pair<double, double>>& points);

FrontLayering pareto_levels(std::vector<ScoredPair> pairs);

// Union of position ids and candidate ids over pairs with level <= i.
std::pair<std::set<std::string>, std::set<std::string>> select_top_fronts(
    const FrontLayering& layering, int top_fronts);

// Edge weights 1/level for every scored pair.
BipartiteWeights level_weights(const FrontLayering& layering);

}  // namespace fairea
