#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "fairea/errors.hpp"

namespace fairea {

// Injective partial map from open positions to candidates.
class Matching {
 public:
  Matching() = default;

  // Throws validation_error if the position or candidate is already used.
  void assign(const std::string& position, const std::string& candidate);
  void erase_position(const std::string& position);

  bool has_position(const std::string& position) const { return by_position_.count(position) > 0; }
  bool has_candidate(const std::string& candidate) const { return by_candidate_.count(candidate) > 0; }
  const std::string& candidate_for(const std::string& position) const;
  const std::string& position_for(const std::string& candidate) const;

  std::size_t size() const { return by_position_.size(); }
  bool empty() const { return by_position_.empty(); }
  const std::map<std::string, std::string>& pairs() const { return by_position_; }

  bool operator==(const Matching& other) const { return by_position_ == other.by_position_; }

 private:
  std::map<std::string, std::string> by_position_;
  std::map<std::string, std::string> by_candidate_;
};

// Sparse positive weights between open positions (left) and candidates
// (right). Ids are kept sorted so every search below is deterministic.
class BipartiteWeights {
 public:
  using Edge = std::tuple<std::string, std::string, double>;

  BipartiteWeights() = default;
  explicit BipartiteWeights(const std::vector<Edge>& edges);

  const std::vector<std::string>& left_ids() const { return left_; }
  const std::vector<std::string>& right_ids() const { return right_; }
  std::size_t edge_count() const { return edge_count_; }

  std::optional<double> weight(const std::string& left, const std::string& right) const;
  std::vector<Edge> edges() const;

  // Internal index view, used by the solvers.
  int left_index(const std::string& id) const;
  int right_index(const std::string& id) const;
  const std::vector<std::vector<std::pair<int, double>>>& adjacency() const { return adjacency_; }

 private:
  std::vector<std::string> left_;
  std::vector<std::string> right_;
  std::map<std::string, int> left_index_;
  std::map<std::string, int> right_index_;
  std::vector<std::vector<std::pair<int, double>>> adjacency_;  // per left, sorted by right index
  std::size_t edge_count_ = 0;
};

struct WeightedMatching {
  Matching matching;
  double total_weight = 0.0;
};

// Maximum-weight matching covering every left node, via the augmenting
// path / dual adjustment scheme of the Hungarian algorithm restricted to
// qualified edges. Throws infeasible_error("no complete matching") when
// no cover exists. Deterministic: left nodes are processed in id order
// and slack ties resolve to the smallest right index.
WeightedMatching max_weight_complete_matching(const BipartiteWeights& weights);

// Minimum-weight complete cover, implemented by shifting weights to keep
// them positive and maximizing.
WeightedMatching min_weight_complete_matching(const BipartiteWeights& weights);

// Size of a maximum-cardinality matching (weights ignored).
int max_cardinality_matching(const BipartiteWeights& weights);

// Called after every augmentation with the current matching state;
// returns updated weights for the next augmentation. Must keep the same
// left/right id sets and must keep every currently matched pair present
// as an edge.
using ReweighFn = std::function<BipartiteWeights(const Matching&)>;

// Grows `committed` one augmenting path at a time until every left node
// is matched, reinitializing dual labels from scratch after each reweigh
// (stale duals can violate feasibility under new weights). Augmenting
// paths may reroute earlier pairs. Throws
// infeasible_error("stuck: infeasible under qualification") naming the
// left node that cannot be covered.
Matching incremental_rematch(const BipartiteWeights& weights, const Matching& committed,
                             const ReweighFn& reweigh);

}  // namespace fairea
