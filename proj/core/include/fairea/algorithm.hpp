#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fairea/instance.hpp"
#include "fairea/pareto.hpp"

namespace fairea {

// Isolation threshold for one team: an absolute member count or a
// fraction of team size (resolved as ceil(fraction * size)).
struct ThresholdSpec {
  enum class Kind { absolute, fraction };
  Kind kind = Kind::absolute;
  double value = 0.0;

  int resolve(int team_size) const;
  // "2" -> absolute 2; "0.05" -> fraction 0.05. A value with a decimal
  // point must lie in [0, 1].
  static ThresholdSpec parse(const std::string& token);
  std::string to_string() const;
};

struct FairEAConfig {
  std::map<std::string, ThresholdSpec> isolation_thresholds;  // team id -> spec
  int max_outer_iterations = 0;  // 0 = number of qualified pairs
  // Attribute names merged upstream into the single class index; carried
  // for reporting, the algorithm itself sees only class indices.
  std::vector<std::string> multi_attribute_merge;
};

// One threshold applied to every team present in the graph.
std::map<std::string, ThresholdSpec> uniform_thresholds(const AttributedGraph& graph,
                                                        const ThresholdSpec& spec);

struct IterationTrace {
  int iteration = 0;
  int front_depth = 0;
  int pairs_matched = 0;
};

struct AssignmentOutcome {
  Matching matching;  // complete: covers every open position
  std::vector<std::string> notifications;  // teams whose threshold was unreachable
  std::vector<IterationTrace> trace;
};

// Greedy fitness-ordered commitment of candidates to teams below their
// isolation threshold, guarded by a remaining-feasibility check. Teams
// still deficient afterwards are returned as notifications, never as
// failures.
std::pair<Matching, std::vector<std::string>> constraint_prepass(const AssignmentInstance& instance,
                                                                 const FairEAConfig& config);

// The full assignment heuristic: optional constraint pre-pass, then
// outer iterations that score every qualified pair (fitness plus the
// neighborhood-imbalance diversity score) against the current graph
// state, layer the pairs into Pareto fronts, select the top-i fronts,
// and grow the matching one position at a time, re-solving the weighted
// cover and re-scoring diversity after every augmentation. Pre-pass
// commitments are frozen; everything else stays reroutable, so later
// augmentations can reassign earlier pairs instead of stranding a
// position on a used-up candidate. Throws infeasible_error (with the
// blocking positions) when the instance cannot be completed.
AssignmentOutcome fairea_assign(const AssignmentInstance& instance, const FairEAConfig& config);

// Combination table for merging several categorical attributes into one
// class index. Classes enumerate the observed value combinations in
// lexicographic order; unobserved combinations get no index.
class MergedAttribute {
 public:
  MergedAttribute(std::vector<std::string> names,
                  std::vector<std::vector<std::string>> combinations);

  const std::vector<std::string>& attribute_names() const { return names_; }
  int class_count() const { return static_cast<int>(combinations_.size()); }
  int class_of(const std::vector<std::string>& values) const;  // throws if unobserved
  const std::vector<std::string>& values_of(int class_index) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> combinations_;
};

// Builds the merge table from rows of attribute-name -> value. Throws
// validation_error when a row misses one of the named attributes.
MergedAttribute merge_attributes(const std::vector<std::string>& names,
                                 const std::vector<std::map<std::string, std::string>>& rows);

// Class index per row under the merge table.
std::vector<int> classify_rows(const MergedAttribute& merged,
                               const std::vector<std::map<std::string, std::string>>& rows);

}  // namespace fairea
