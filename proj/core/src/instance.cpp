#include "fairea/instance.hpp"

#include <algorithm>
#include <cmath>

namespace fairea {

AssignmentInstance::AssignmentInstance(AttributedGraph graph, std::vector<Candidate> candidates)
    : graph_(std::move(graph)), candidates_(std::move(candidates)) {
  for (int i = 0; i < static_cast<int>(candidates_.size()); ++i) {
    const auto& c = candidates_[i];
    if (c.id.empty()) throw validation_error("empty candidate id");
    if (!candidate_index_.emplace(c.id, i).second)
      throw validation_error("duplicate candidate id '" + c.id + "'");
    if (c.class_index < 0 || c.class_index >= graph_.class_count())
      throw validation_error("candidate '" + c.id + "' has class outside [0, k)");
  }
}

const Candidate& AssignmentInstance::candidate(const std::string& id) const {
  auto it = candidate_index_.find(id);
  if (it == candidate_index_.end()) throw validation_error("unknown candidate id '" + id + "'");
  return candidates_[it->second];
}

std::optional<int> AssignmentInstance::find_candidate(const std::string& id) const {
  auto it = candidate_index_.find(id);
  if (it == candidate_index_.end()) return std::nullopt;
  return it->second;
}

void AssignmentInstance::set_fitness(const std::string& open_position, const std::string& candidate,
                                     double weight) {
  const auto node = graph_.find(open_position);
  if (!node) throw validation_error("fitness references unknown position '" + open_position + "'");
  if (graph_.node(*node).status != NodeStatus::open)
    throw validation_error("fitness references non-open position '" + open_position + "'");
  if (!candidate_index_.count(candidate))
    throw validation_error("fitness references unknown candidate '" + candidate + "'");
  if (!(weight > 0.0) || weight > 1.0 || !std::isfinite(weight))
    throw validation_error("fitness for (" + open_position + ", " + candidate +
                           ") outside (0, 1]");
  set_fitness_unchecked(open_position, candidate, weight);
}

void AssignmentInstance::set_fitness_unchecked(const std::string& open_position,
                                               const std::string& candidate, double weight) {
  if (!fitness_.emplace(std::make_pair(open_position, candidate), weight).second)
    throw validation_error("duplicate fitness entry (" + open_position + ", " + candidate + ")");
}

double AssignmentInstance::fitness(const std::string& open_position,
                                   const std::string& candidate) const {
  auto it = fitness_.find(std::make_pair(open_position, candidate));
  return it == fitness_.end() ? 0.0 : it->second;
}

bool AssignmentInstance::qualified(const std::string& open_position,
                                   const std::string& candidate) const {
  return fitness(open_position, candidate) > 0.0;
}

std::vector<BipartiteWeights::Edge> AssignmentInstance::qualified_pairs() const {
  std::vector<BipartiteWeights::Edge> out;
  out.reserve(fitness_.size());
  for (const auto& [key, w] : fitness_)
    if (w > 0.0) out.emplace_back(key.first, key.second, w);
  return out;
}

std::vector<std::string> AssignmentInstance::open_position_ids() const {
  std::vector<std::string> out;
  for (int idx : graph_.open_positions()) out.push_back(graph_.node(idx).id);
  return out;
}

int AssignmentInstance::open_count() const {
  return static_cast<int>(graph_.open_positions().size());
}

BipartiteWeights AssignmentInstance::qualification_weights() const {
  return BipartiteWeights(qualified_pairs());
}

std::vector<std::string> validate_instance(const AssignmentInstance& instance) {
  std::vector<std::string> violations;
  const auto& graph = instance.graph();

  const int m = instance.open_count();
  const int t = instance.candidate_count();
  if (t < m)
    violations.push_back("t < m: " + std::to_string(t) + " candidates for " +
                         std::to_string(m) + " open positions");

  for (const auto& c : instance.candidates()) {
    if (!c.origin_node.empty() && !graph.has_node(c.origin_node))
      violations.push_back("candidate '" + c.id + "' has unknown origin node '" +
                           c.origin_node + "'");
  }

  for (const auto& [key, w] : instance.stored_fitness()) {
    const auto& [pos, cand] = key;
    const auto node = graph.find(pos);
    if (!node)
      violations.push_back("fitness references unknown position '" + pos + "'");
    else if (graph.node(*node).status != NodeStatus::open)
      violations.push_back("fitness references non-open position '" + pos + "'");
    if (!instance.find_candidate(cand))
      violations.push_back("fitness references unknown candidate '" + cand + "'");
    if (!(w > 0.0) || !std::isfinite(w))
      violations.push_back("nonpositive fitness for (" + pos + ", " + cand + ")");
    else if (w > 1.0)
      violations.push_back("fitness above 1 for (" + pos + ", " + cand + ")");
  }

  // Every open position needs at least one qualified candidate; the full
  // cover condition is feasibility_check's job but an isolated position
  // is worth naming directly.
  for (const auto& pos : instance.open_position_ids()) {
    bool any = false;
    for (const auto& c : instance.candidates())
      if (instance.qualified(pos, c.id)) {
        any = true;
        break;
      }
    if (!any) violations.push_back("open position '" + pos + "' has no qualified candidate");
  }
  return violations;
}

bool feasibility_check(const AssignmentInstance& instance,
                       const std::set<std::string>& excluded_positions,
                       const std::set<std::string>& excluded_candidates) {
  std::vector<BipartiteWeights::Edge> edges;
  std::set<std::string> remaining;
  for (const auto& pos : instance.open_position_ids())
    if (!excluded_positions.count(pos)) remaining.insert(pos);
  for (const auto& [pos, cand, w] : instance.qualified_pairs()) {
    if (excluded_positions.count(pos) || excluded_candidates.count(cand)) continue;
    edges.emplace_back(pos, cand, 1.0);
  }
  if (remaining.empty()) return true;
  if (edges.empty()) return false;
  const BipartiteWeights weights(edges);
  if (weights.left_ids().size() < remaining.size()) return false;  // isolated positions
  return max_cardinality_matching(weights) == static_cast<int>(remaining.size());
}

double overall_fit_score(const AssignmentInstance& instance, const Matching& matching) {
  double total = 0.0;
  for (const auto& pos : instance.open_position_ids()) {
    if (!matching.has_position(pos)) throw error("incomplete matching");
    const auto& cand = matching.candidate_for(pos);
    const double w = instance.fitness(pos, cand);
    if (!(w > 0.0))
      throw validation_error("matched pair (" + pos + ", " + cand + ") has zero fitness");
    total += w;
  }
  return total;
}

AttributedGraph apply_matching(const AssignmentInstance& instance, const Matching& matching) {
  AttributedGraph result = instance.graph();
  for (const auto& [pos, cand] : matching.pairs()) {
    const int idx = result.index_of(pos);
    if (result.node(idx).status != NodeStatus::open)
      throw validation_error("matched position '" + pos + "' is not open");
    if (!instance.qualified(pos, cand))
      throw validation_error("matched pair (" + pos + ", " + cand + ") has zero fitness");
    result.set_class(idx, instance.candidate(cand).class_index);
    result.set_status(idx, NodeStatus::filled);
  }
  return result;
}

}  // namespace fairea
