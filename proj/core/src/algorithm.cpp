#include "fairea/algorithm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace fairea {

int ThresholdSpec::resolve(int team_size) const {
  if (value < 0.0) throw validation_error("negative isolation threshold");
  if (kind == Kind::absolute) return static_cast<int>(value);
  if (value > 1.0) throw validation_error("fractional threshold above 1");
  return static_cast<int>(std::ceil(value * static_cast<double>(team_size)));
}

ThresholdSpec ThresholdSpec::parse(const std::string& token) {
  ThresholdSpec spec;
  std::size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw validation_error("bad threshold '" + token + "'");
  }
  if (consumed != token.size() || v < 0.0)
    throw validation_error("bad threshold '" + token + "'");
  spec.value = v;
  spec.kind = token.find('.') != std::string::npos ? Kind::fraction : Kind::absolute;
  if (spec.kind == Kind::fraction && v > 1.0)
    throw validation_error("fractional threshold above 1: '" + token + "'");
  return spec;
}

std::string ThresholdSpec::to_string() const {
  std::ostringstream out;
  if (kind == Kind::absolute) {
    out << static_cast<long long>(value);
  } else {
    out << value;
    if (out.str().find('.') == std::string::npos) out << ".0";
  }
  return out.str();
}

std::map<std::string, ThresholdSpec> uniform_thresholds(const AttributedGraph& graph,
                                                        const ThresholdSpec& spec) {
  std::map<std::string, ThresholdSpec> out;
  for (const auto& node : graph.nodes())
    if (!node.team.empty()) out.emplace(node.team, spec);
  return out;
}

namespace {

std::map<std::string, std::vector<int>> team_members(const AttributedGraph& graph) {
  std::map<std::string, std::vector<int>> teams;
  for (int i = 0; i < graph.node_count(); ++i)
    if (!graph.node(i).team.empty()) teams[graph.node(i).team].push_back(i);
  return teams;
}

// Plain Kuhn augmenting search over qualification edges, used for the
// feasibility repair and for naming blocking positions in errors.
struct CardinalityMatcher {
  std::vector<std::string> lefts;                       // sorted
  std::vector<std::string> rights;                      // sorted
  std::map<std::string, int> left_index, right_index;
  std::vector<std::vector<int>> adj;                    // per left, sorted right indices
  std::vector<int> match_left, match_right;

  CardinalityMatcher(const std::set<std::string>& left_ids, const std::set<std::string>& right_ids,
                     const std::vector<BipartiteWeights::Edge>& edges) {
    lefts.assign(left_ids.begin(), left_ids.end());
    rights.assign(right_ids.begin(), right_ids.end());
    for (int i = 0; i < static_cast<int>(lefts.size()); ++i) left_index[lefts[i]] = i;
    for (int i = 0; i < static_cast<int>(rights.size()); ++i) right_index[rights[i]] = i;
    adj.assign(lefts.size(), {});
    for (const auto& [l, r, w] : edges) {
      auto li = left_index.find(l);
      auto ri = right_index.find(r);
      if (li != left_index.end() && ri != right_index.end()) adj[li->second].push_back(ri->second);
    }
    for (auto& row : adj) std::sort(row.begin(), row.end());
    match_left.assign(lefts.size(), -1);
    match_right.assign(rights.size(), -1);
  }

  bool augment(int l, std::vector<char>& visited) {
    for (int r : adj[l]) {
      if (visited[r]) continue;
      visited[r] = 1;
      if (match_right[r] < 0 || augment(match_right[r], visited)) {
        match_left[l] = r;
        match_right[r] = l;
        return true;
      }
    }
    return false;
  }

  // Augments every unmatched left that can be covered; returns ids of
  // lefts that remain uncovered.
  std::vector<std::string> run() {
    std::vector<std::string> uncovered;
    for (int l = 0; l < static_cast<int>(lefts.size()); ++l) {
      if (match_left[l] >= 0) continue;
      std::vector<char> visited(rights.size(), 0);
      if (!augment(l, visited)) uncovered.push_back(lefts[l]);
    }
    return uncovered;
  }
};

std::vector<std::string> blocking_positions(const AssignmentInstance& instance,
                                            const std::set<std::string>& excluded_positions,
                                            const std::set<std::string>& excluded_candidates) {
  std::set<std::string> lefts;
  for (const auto& pos : instance.open_position_ids())
    if (!excluded_positions.count(pos)) lefts.insert(pos);
  std::set<std::string> rights;
  std::vector<BipartiteWeights::Edge> edges;
  for (const auto& [pos, cand, w] : instance.qualified_pairs()) {
    if (excluded_positions.count(pos) || excluded_candidates.count(cand)) continue;
    rights.insert(cand);
    edges.emplace_back(pos, cand, w);
  }
  CardinalityMatcher matcher(lefts, rights, edges);
  return matcher.run();
}

// Working assignment state: the scratch graph plus per-node resolved
// neighbor class counts, kept in lockstep so diversity scores are always
// computed against the current assignment state.
struct GraphState {
  AttributedGraph graph;
  std::vector<std::vector<int>> neighbor_counts;

  explicit GraphState(const AttributedGraph& g) : graph(g) {
    neighbor_counts.assign(graph.node_count(), std::vector<int>(graph.class_count(), 0));
    for (int i = 0; i < graph.node_count(); ++i) {
      const int c = graph.node(i).class_index;
      if (c >= 0)
        for (int nb : graph.neighbors(i)) ++neighbor_counts[nb][c];
    }
  }

  void assign_class(int index, int cls) {
    const int old = graph.node(index).class_index;
    if (old == cls) return;
    if (old >= 0)
      for (int nb : graph.neighbors(index)) --neighbor_counts[nb][old];
    graph.set_class(index, cls);
    if (cls >= 0)
      for (int nb : graph.neighbors(index)) ++neighbor_counts[nb][cls];
  }

  // The general neighborhood-imbalance score. The binary score is this
  // one thresholded at a strict majority; using the graded form keeps the
  // diversity reward proportional to how under-represented the class is,
  // which preserves fitness on nearly-balanced neighborhoods.
  double diversity(int position_index, int candidate_class) const {
    return diversity_score_multiclass_counts(neighbor_counts[position_index], candidate_class);
  }
};

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& line : lines) {
    if (!out.empty()) out += "; ";
    out += line;
  }
  return out;
}

}  // namespace

std::pair<Matching, std::vector<std::string>> constraint_prepass(const AssignmentInstance& instance,
                                                                 const FairEAConfig& config) {
  const auto& graph = instance.graph();
  const int k = graph.class_count();
  const auto teams = team_members(graph);

  Matching committed;
  std::vector<std::string> notifications;
  std::set<std::string> used_positions, used_candidates;

  for (const auto& [team, members] : teams) {
    auto spec = config.isolation_thresholds.find(team);
    if (spec == config.isolation_thresholds.end()) continue;
    const int threshold = spec->second.resolve(static_cast<int>(members.size()));
    if (threshold <= 0) continue;  // threshold 0: avoiding isolation not requested

    std::vector<int> have(k, 0);
    for (int idx : members)
      if (graph.node(idx).class_index >= 0) ++have[graph.node(idx).class_index];

    bool deficient = false;
    for (int cls = 0; cls < k; ++cls) {
      if (have[cls] >= threshold) continue;
      // Descending-fitness pairs of (open position in this team, candidate
      // of this class); id order breaks weight ties.
      std::vector<std::tuple<double, std::string, std::string>> pairs;
      for (int idx : members) {
        if (graph.node(idx).status != NodeStatus::open) continue;
        const auto& pos = graph.node(idx).id;
        if (used_positions.count(pos)) continue;
        for (const auto& cand : instance.candidates()) {
          if (cand.class_index != cls || used_candidates.count(cand.id)) continue;
          const double w = instance.fitness(pos, cand.id);
          if (w > 0.0) pairs.emplace_back(w, pos, cand.id);
        }
      }
      std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
        return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
      });
      for (const auto& [w, pos, cand] : pairs) {
        if (have[cls] >= threshold) break;
        if (used_positions.count(pos) || used_candidates.count(cand)) continue;
        auto try_pos = used_positions;
        auto try_cand = used_candidates;
        try_pos.insert(pos);
        try_cand.insert(cand);
        if (!feasibility_check(instance, try_pos, try_cand)) continue;
        committed.assign(pos, cand);
        used_positions = std::move(try_pos);
        used_candidates = std::move(try_cand);
        ++have[cls];
      }
      if (have[cls] < threshold) deficient = true;
    }
    if (deficient) notifications.push_back(team);
  }
  return {std::move(committed), std::move(notifications)};
}

AssignmentOutcome fairea_assign(const AssignmentInstance& instance, const FairEAConfig& config) {
  const auto violations = validate_instance(instance);
  if (!violations.empty()) throw validation_error("invalid instance: " + join_lines(violations));

  AssignmentOutcome outcome;
  const auto open_ids = instance.open_position_ids();
  const int open_count = static_cast<int>(open_ids.size());
  if (open_count == 0) return outcome;

  {
    auto blocked = blocking_positions(instance, {}, {});
    if (!blocked.empty())
      throw infeasible_error("no complete matching covers all open positions", blocked);
  }

  GraphState state(instance.graph());
  std::map<std::string, int> candidate_class;
  for (const auto& c : instance.candidates()) candidate_class[c.id] = c.class_index;

  bool thresholds_active = false;
  {
    const auto members = team_members(instance.graph());
    for (const auto& [team, spec] : config.isolation_thresholds) {
      auto it = members.find(team);
      if (it != members.end() && spec.resolve(static_cast<int>(it->second.size())) > 0) {
        thresholds_active = true;
        break;
      }
    }
  }
  if (thresholds_active) {
    auto [pre, notes] = constraint_prepass(instance, config);
    outcome.notifications = std::move(notes);
    for (const auto& [pos, cand] : pre.pairs()) {
      outcome.matching.assign(pos, cand);
      state.assign_class(state.graph.index_of(pos), candidate_class.at(cand));
    }
  }

  // Pre-pass commitments are frozen; everything else stays reroutable,
  // so later augmentations can reassign earlier pairs instead of
  // stranding a position whose candidates are used up. Positions never
  // become unmatched again.
  const Matching prepass_matching = outcome.matching;
  std::vector<BipartiteWeights::Edge> loop_pairs;
  for (const auto& [pos, cand, w] : instance.qualified_pairs())
    if (!prepass_matching.has_position(pos) && !prepass_matching.has_candidate(cand))
      loop_pairs.emplace_back(pos, cand, w);

  const int max_iterations = config.max_outer_iterations > 0
                                 ? config.max_outer_iterations
                                 : static_cast<int>(loop_pairs.size());

  Matching matching;  // main-loop pairs only
  std::map<std::string, std::string> applied;  // matching classes living in `state`
  auto sync_state = [&](const Matching& target) {
    for (const auto& [pos, cand] : applied) {
      if (!target.has_position(pos) || target.candidate_for(pos) != cand)
        state.assign_class(state.graph.index_of(pos), AttributedGraph::kUnassigned);
    }
    for (const auto& [pos, cand] : target.pairs()) {
      auto it = applied.find(pos);
      if (it == applied.end() || it->second != cand)
        state.assign_class(state.graph.index_of(pos), candidate_class.at(cand));
    }
    applied.clear();
    for (const auto& [pos, cand] : target.pairs()) applied.emplace(pos, cand);
  };

  const auto blocked_now = [&]() {
    std::set<std::string> pos_used, cand_used;
    for (const auto& [p, c] : prepass_matching.pairs()) {
      pos_used.insert(p);
      cand_used.insert(c);
    }
    for (const auto& [p, c] : matching.pairs()) {
      pos_used.insert(p);
      cand_used.insert(c);
    }
    return blocking_positions(instance, pos_used, cand_used);
  };

  struct SubPair {
    std::string position;
    std::string candidate;
    int position_index;
    int candidate_class;
    double fitness;
    double diversity;
  };

  const int target = open_count - static_cast<int>(prepass_matching.size());
  for (int iteration = 1; static_cast<int>(matching.size()) < target; ++iteration) {
    if (iteration > max_iterations)
      throw infeasible_error("outer iteration budget exhausted", blocked_now());
    if (loop_pairs.empty())
      throw infeasible_error("no qualified pairs left for the remaining open positions",
                             blocked_now());

    // Score every qualified pair (matched pairs included: they are edges
    // of the bipartite graph and can be rerouted) against the current
    // graph state, then layer and select the top-i fronts.
    std::vector<ScoredPair> scored;
    scored.reserve(loop_pairs.size());
    for (const auto& [pos, cand, w] : loop_pairs) {
      ScoredPair sp{pos, cand, w, 0.0};
      sp.diversity = state.diversity(state.graph.index_of(pos), candidate_class.at(cand));
      scored.push_back(std::move(sp));
    }
    FrontLayering global = pareto_levels(std::move(scored));
    auto [selected_positions, selected_candidates] = select_top_fronts(global, iteration);

    // The iteration's bipartite graph: every qualified pair inside the
    // selection plus the currently matched pairs, weighted by fitness
    // plus the state-dependent diversity score.
    std::vector<SubPair> subset;
    for (std::size_t i = 0; i < global.pairs.size(); ++i) {
      const auto& sp = global.pairs[i];
      const bool selected =
          selected_positions.count(sp.position) && selected_candidates.count(sp.candidate);
      const bool matched_pair =
          matching.has_position(sp.position) && matching.candidate_for(sp.position) == sp.candidate;
      if (!selected && !matched_pair) continue;
      subset.push_back({sp.position, sp.candidate, state.graph.index_of(sp.position),
                        candidate_class.at(sp.candidate), sp.fitness, sp.diversity});
    }

    std::set<std::string> call_lefts;
    for (const auto& [p, c] : matching.pairs()) call_lefts.insert(p);
    auto subset_weights = [&]() {
      std::vector<BipartiteWeights::Edge> edges;
      for (const auto& p : subset)
        if (call_lefts.count(p.position))
          edges.emplace_back(p.position, p.candidate, p.fitness + p.diversity);
      return BipartiteWeights(edges);
    };

    // Re-score diversity against the assignment state after every
    // augmentation; fronts are recomputed at the next iteration start.
    auto rescore = [&](const Matching& current) {
      sync_state(current);
      for (auto& p : subset)
        p.diversity = state.diversity(p.position_index, p.candidate_class);
    };

    const int before = static_cast<int>(matching.size());
    for (const auto& position : selected_positions) {
      if (matching.has_position(position)) continue;
      call_lefts.insert(position);
      try {
        // One augmentation = one more covered position. The cover is
        // re-solved to optimality under the current weights, so earlier
        // pairs reroute whenever the new assignment makes that pay.
        matching = max_weight_complete_matching(subset_weights()).matching;
      } catch (const infeasible_error&) {
        // Not coverable within this selection; a later, wider front will
        // pick the position up again.
        call_lefts.erase(position);
        continue;
      }
      rescore(matching);
    }
    outcome.trace.push_back(
        {iteration, iteration, static_cast<int>(matching.size()) - before});
  }

  for (const auto& [pos, cand] : matching.pairs()) outcome.matching.assign(pos, cand);
  return outcome;
}

MergedAttribute::MergedAttribute(std::vector<std::string> names,
                                 std::vector<std::vector<std::string>> combinations)
    : names_(std::move(names)), combinations_(std::move(combinations)) {}

int MergedAttribute::class_of(const std::vector<std::string>& values) const {
  auto it = std::lower_bound(combinations_.begin(), combinations_.end(), values);
  if (it == combinations_.end() || *it != values)
    throw validation_error("unobserved attribute combination");
  return static_cast<int>(it - combinations_.begin());
}

const std::vector<std::string>& MergedAttribute::values_of(int class_index) const {
  return combinations_.at(class_index);
}

MergedAttribute merge_attributes(const std::vector<std::string>& names,
                                 const std::vector<std::map<std::string, std::string>>& rows) {
  if (names.empty()) throw validation_error("no attributes to merge");
  std::set<std::vector<std::string>> observed;
  for (const auto& row : rows) {
    std::vector<std::string> combo;
    combo.reserve(names.size());
    for (const auto& name : names) {
      auto it = row.find(name);
      if (it == row.end())
        throw validation_error("missing attribute value for '" + name + "'");
      combo.push_back(it->second);
    }
    observed.insert(std::move(combo));
  }
  return MergedAttribute(names, {observed.begin(), observed.end()});
}

std::vector<int> classify_rows(const MergedAttribute& merged,
                               const std::vector<std::map<std::string, std::string>>& rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<std::string> combo;
    for (const auto& name : merged.attribute_names()) {
      auto it = row.find(name);
      if (it == row.end())
        throw validation_error("missing attribute value for '" + name + "'");
      combo.push_back(it->second);
    }
    out.push_back(merged.class_of(combo));
  }
  return out;
}

}  // namespace fairea
