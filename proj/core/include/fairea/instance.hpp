#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fairea/bipartite.hpp"
#include "fairea/graph.hpp"

namespace fairea {

struct Candidate {
  std::string id;
  int class_index = 0;
  std::string origin_node;  // empty = none
};

// One assignment problem: a graph with open positions, a candidate
// roster, and a sparse fitness table. Absent fitness means 0 and
// "qualified" means fitness > 0, so only positive weights are stored.
class AssignmentInstance {
 public:
  AssignmentInstance() = default;
  AssignmentInstance(AttributedGraph graph, std::vector<Candidate> candidates);

  const AttributedGraph& graph() const { return graph_; }
  AttributedGraph& graph() { return graph_; }

  const std::vector<Candidate>& candidates() const { return candidates_; }
  const Candidate& candidate(const std::string& id) const;
  std::optional<int> find_candidate(const std::string& id) const;

  // Throws validation_error on unknown ids, non-open positions, weights
  // outside (0, 1], or duplicate entries.
  void set_fitness(const std::string& open_position, const std::string& candidate, double weight);
  // Stores the entry verbatim (duplicates still rejected) so that
  // validate_instance can report bad data instead of construction failing.
  void set_fitness_unchecked(const std::string& open_position, const std::string& candidate,
                             double weight);
  double fitness(const std::string& open_position, const std::string& candidate) const;  // 0 = absent
  bool qualified(const std::string& open_position, const std::string& candidate) const;

  // Qualified (position, candidate, weight > 0) triples, ordered by
  // (position id, candidate id).
  std::vector<BipartiteWeights::Edge> qualified_pairs() const;
  // Every stored triple, including invalid ones awaiting validation.
  const std::map<std::pair<std::string, std::string>, double>& stored_fitness() const {
    return fitness_;
  }

  std::vector<std::string> open_position_ids() const;  // node order
  int open_count() const;
  int candidate_count() const { return static_cast<int>(candidates_.size()); }

  // Bipartite view of the qualification structure (weights = fitness).
  BipartiteWeights qualification_weights() const;

 private:
  AttributedGraph graph_;
  std::vector<Candidate> candidates_;
  std::map<std::string, int> candidate_index_;
  std::map<std::pair<std::string, std::string>, double> fitness_;
};

// All invariant violations as human-readable strings; empty = valid.
// Violations are data, not failures.
std::vector<std::string> validate_instance(const AssignmentInstance& instance);

// True iff a matching exists that covers every non-excluded open
// position using non-excluded candidates over qualified edges.
bool feasibility_check(const AssignmentInstance& instance,
                       const std::set<std::string>& excluded_positions = {},
                       const std::set<std::string>& excluded_candidates = {});

// Sum of matched fitness weights. Throws error("incomplete matching")
// unless the matching covers every open position.
double overall_fit_score(const AssignmentInstance& instance, const Matching& matching);

// Returns a copy of the graph in which each matched open position is
// filled with its candidate's class. Unmatched open positions stay
// unresolved. Throws on unqualified pairs.
AttributedGraph apply_matching(const AssignmentInstance& instance, const Matching& matching);

}  // namespace fairea
