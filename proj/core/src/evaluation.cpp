#include "fairea/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "fairea/graph.hpp"
#include "fairea/pareto.hpp"

namespace fairea {

namespace {

std::vector<std::vector<std::pair<int, double>>> qualified_adjacency(
    const AssignmentInstance& instance, const std::vector<std::string>& positions) {
  std::map<std::string, int> candidate_index;
  for (int i = 0; i < instance.candidate_count(); ++i)
    candidate_index[instance.candidates()[i].id] = i;
  std::map<std::string, int> position_index;
  for (int i = 0; i < static_cast<int>(positions.size()); ++i)
    position_index[positions[i]] = i;

  std::vector<std::vector<std::pair<int, double>>> adj(positions.size());
  for (const auto& [pos, cand, w] : instance.qualified_pairs()) {
    auto pi = position_index.find(pos);
    if (pi != position_index.end()) adj[pi->second].emplace_back(candidate_index.at(cand), w);
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

}  // namespace

Matching random_baseline(const AssignmentInstance& instance, std::uint64_t seed) {
  const auto positions = instance.open_position_ids();
  if (positions.empty()) return {};
  const auto adj = qualified_adjacency(instance, positions);
  std::mt19937_64 rng(seed);
  constexpr int kRestartBudget = 1000;

  for (int attempt = 0; attempt < kRestartBudget; ++attempt) {
    std::vector<int> order(positions.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<char> used(instance.candidate_count(), 0);
    Matching matching;
    bool dead_end = false;
    for (int p : order) {
      std::vector<int> free;
      for (const auto& [c, w] : adj[p])
        if (!used[c]) free.push_back(c);
      if (free.empty()) {
        dead_end = true;
        break;
      }
      const int pick = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
      used[pick] = 1;
      matching.assign(positions[p], instance.candidates()[pick].id);
    }
    if (!dead_end) return matching;
  }

  // Randomized max-cardinality fallback: random augmentation order and
  // random adjacency order, still seed-deterministic.
  std::vector<std::vector<int>> plain(adj.size());
  for (std::size_t p = 0; p < adj.size(); ++p) {
    for (const auto& [c, w] : adj[p]) plain[p].push_back(c);
    std::shuffle(plain[p].begin(), plain[p].end(), rng);
  }
  std::vector<int> order(positions.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> match_pos(positions.size(), -1);
  std::vector<int> match_cand(instance.candidate_count(), -1);
  std::function<bool(int, std::vector<char>&)> augment = [&](int p, std::vector<char>& visited) {
    for (int c : plain[p]) {
      if (visited[c]) continue;
      visited[c] = 1;
      if (match_cand[c] < 0 || augment(match_cand[c], visited)) {
        match_pos[p] = c;
        match_cand[c] = p;
        return true;
      }
    }
    return false;
  };
  for (int p : order) {
    std::vector<char> visited(instance.candidate_count(), 0);
    if (!augment(p, visited))
      throw infeasible_error("no complete matching", {positions[p]});
  }
  Matching matching;
  for (std::size_t p = 0; p < positions.size(); ++p)
    matching.assign(positions[p], instance.candidates()[match_pos[p]].id);
  return matching;
}

Matching hungarian_baseline(const AssignmentInstance& instance) {
  const auto& graph = instance.graph();
  const int k = graph.class_count();
  std::vector<BipartiteWeights::Edge> edges;
  for (const auto& [pos, cand, w] : instance.qualified_pairs()) {
    const int cls = instance.candidate(cand).class_index;
    const double diversity =
        k == 2 ? diversity_score_binary(graph, pos, cls)
               : diversity_score_multiclass(graph, pos, cls);
    edges.emplace_back(pos, cand, w + diversity);
  }
  if (edges.empty()) {
    if (instance.open_count() == 0) return {};
    throw infeasible_error("no complete matching", instance.open_position_ids());
  }
  const BipartiteWeights weights(edges);
  if (static_cast<int>(weights.left_ids().size()) < instance.open_count())
    throw infeasible_error("no complete matching", instance.open_position_ids());
  return max_weight_complete_matching(weights).matching;
}

OracleResult exact_oracle(const AssignmentInstance& instance, double lambda) {
  if (lambda < 0.0 || lambda > 1.0) throw validation_error("lambda outside [0, 1]");
  const auto positions = instance.open_position_ids();
  const auto adj = qualified_adjacency(instance, positions);

  // Enumeration bound estimate: product of position degrees.
  double estimate = 1.0;
  for (const auto& row : adj) {
    estimate *= std::max<std::size_t>(row.size(), 1);
    if (estimate > 1e7) throw scale_error("oracle scale exceeded");
  }

  // Positions ordered by degree then id keeps the search tree small.
  std::vector<int> order(positions.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (adj[a].size() != adj[b].size()) return adj[a].size() < adj[b].size();
    return positions[a] < positions[b];
  });

  AssortativityTracker tracker(instance.graph());
  std::vector<int> node_of(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i)
    node_of[i] = instance.graph().index_of(positions[i]);

  std::vector<char> used(instance.candidate_count(), 0);
  std::vector<int> chosen(positions.size(), -1);

  struct Outcome {
    double fitness;
    double abs_assort;
    std::vector<int> chosen;
  };
  std::vector<Outcome> outcomes;
  long long enumerated = 0;

  std::function<void(std::size_t, double)> visit = [&](std::size_t depth, double fitness) {
    if (depth == order.size()) {
      if (++enumerated > 10'000'000LL) throw scale_error("oracle scale exceeded");
      double abs_assort = 1.0;  // a single-class outcome counts as fully segregated
      try {
        abs_assort = std::abs(tracker.assortativity());
      } catch (const degenerate_error&) {
      }
      outcomes.push_back({fitness, abs_assort, chosen});
      return;
    }
    const int p = order[depth];
    for (const auto& [c, w] : adj[p]) {
      if (used[c]) continue;
      used[c] = 1;
      chosen[p] = c;
      tracker.set_class(node_of[p], instance.candidates()[c].class_index);
      visit(depth + 1, fitness + w);
      tracker.set_class(node_of[p], AttributedGraph::kUnassigned);
      chosen[p] = -1;
      used[c] = 0;
    }
  };
  visit(0, 0.0);

  if (outcomes.empty())
    throw infeasible_error("no complete matching", positions);

  double fs_low = outcomes.front().fitness, fs_high = outcomes.front().fitness;
  for (const auto& o : outcomes) {
    fs_low = std::min(fs_low, o.fitness);
    fs_high = std::max(fs_high, o.fitness);
  }

  const Outcome* best = nullptr;
  double best_value = 0.0;
  for (const auto& o : outcomes) {
    const double normalized =
        fs_high > fs_low ? (o.fitness - fs_low) / (fs_high - fs_low) : 1.0;
    const double value = lambda * normalized - (1.0 - lambda) * o.abs_assort;
    if (best == nullptr || value > best_value) {
      best = &o;
      best_value = value;
    }
  }

  OracleResult result;
  for (std::size_t i = 0; i < positions.size(); ++i)
    result.best.assign(positions[i], instance.candidates()[best->chosen[i]].id);
  result.best_fitness = best->fitness;
  result.best_abs_assortativity = best->abs_assort;

  // Non-dominated (max fitness, min |assortativity|) outcomes.
  std::vector<std::pair<double, double>> points;
  points.reserve(outcomes.size());
  for (const auto& o : outcomes) points.emplace_back(o.fitness, o.abs_assort);
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  double best_abs = std::numeric_limits<double>::infinity();
  for (const auto& [fitness, abs_assort] : points) {
    if (abs_assort < best_abs) {
      result.pareto_outcomes.emplace_back(fitness, abs_assort);
      best_abs = abs_assort;
    }
  }
  return result;
}

double percentage_improvement_fitness(double fs_a, double fs_l, double fs_h) {
  if (fs_h < fs_l) throw validation_error("fitness bounds inverted");
  constexpr double tol = 1e-9;
  if (fs_a < fs_l - tol || fs_a > fs_h + tol)
    throw error("fit score outside [FS_l, FS_h]: matcher bug");
  if (fs_h - fs_l < tol) return 100.0;  // every complete matching is equally fit
  return (fs_a - fs_l) / (fs_h - fs_l) * 100.0;
}

double percentage_improvement_assortativity(double ac_b, double ac_a) {
  if (std::abs(ac_b) < 1e-12) throw degenerate_error("baseline already perfectly diverse");
  return (std::abs(ac_b) - std::abs(ac_a)) / std::abs(ac_b) * 100.0;
}

double isolation_score(const AttributedGraph& graph) {
  std::map<std::string, std::vector<int>> counts;  // team -> per-class counts
  for (int i = 0; i < graph.node_count(); ++i) {
    const auto& node = graph.node(i);
    if (node.team.empty())
      throw validation_error("node '" + node.id + "' has no team");
    if (node.class_index < 0)
      throw validation_error("node '" + node.id + "' is unresolved");
    auto& row = counts[node.team];
    if (row.empty()) row.assign(graph.class_count(), 0);
    ++row[node.class_index];
  }
  if (counts.empty()) throw validation_error("no teams present");
  double sum = 0.0;
  for (const auto& [team, row] : counts) {
    const int size = std::accumulate(row.begin(), row.end(), 0);
    const int least = *std::min_element(row.begin(), row.end());
    sum += static_cast<double>(least) / static_cast<double>(size);
  }
  return sum / static_cast<double>(counts.size());
}

}  // namespace fairea
