#include "fairea/pareto.hpp"

#include <algorithm>
#include <numeric>

namespace fairea {

double diversity_score_binary_counts(const std::vector<int>& neighbor_counts,
                                     int candidate_class) {
  if (neighbor_counts.size() != 2) throw error("use multi-class score");
  const int own = neighbor_counts[candidate_class];
  const int other = neighbor_counts[1 - candidate_class];
  return own < other ? 1.0 : 0.0;
}

double diversity_score_binary(const AttributedGraph& graph, const std::string& open_position,
                              int candidate_class) {
  if (graph.class_count() != 2) throw error("use multi-class score");
  if (candidate_class < 0 || candidate_class >= 2)
    throw validation_error("candidate class outside [0, 2)");
  return diversity_score_binary_counts(neighbor_class_counts(graph, open_position),
                                       candidate_class);
}

double diversity_score_multiclass_counts(const std::vector<int>& neighbor_counts,
                                         int candidate_class) {
  const int total = std::accumulate(neighbor_counts.begin(), neighbor_counts.end(), 0);
  if (total == 0) return 0.0;
  const int own = neighbor_counts.at(candidate_class);
  return static_cast<double>(total - own) / static_cast<double>(total);
}

double diversity_score_multiclass(const AttributedGraph& graph, const std::string& open_position,
                                  int candidate_class) {
  if (candidate_class < 0 || candidate_class >= graph.class_count())
    throw validation_error("candidate class outside [0, k)");
  return diversity_score_multiclass_counts(neighbor_class_counts(graph, open_position),
                                           candidate_class);
}

std::vector<int> pareto_level_indices(const std::vector<std::pair<double, double>>& points) {
  const int n = static_cast<int>(points.size());
  std::vector<int> level(n, 0);
  if (n == 0) return level;

  // Group duplicates: identical points never dominate each other.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (points[a].first != points[b].first) return points[a].first > points[b].first;
    return points[a].second > points[b].second;
  });

  // Sweep in (x desc, y desc) order. A previously placed distinct point q
  // dominates p exactly when q.y >= p.y, and per-level max-y values are
  // nonincreasing in the level index, so the deepest dominating level can
  // be binary searched.
  std::vector<double> level_max_y;  // level_max_y[L-1] = max y on front L
  int i = 0;
  while (i < n) {
    int j = i;
    while (j < n && points[order[j]] == points[order[i]]) ++j;
    const double y = points[order[i]].second;
    int lo = 0, hi = static_cast<int>(level_max_y.size());
    while (lo < hi) {  // find first level whose max y < y
      const int mid = (lo + hi) / 2;
      if (level_max_y[mid] >= y)
        lo = mid + 1;
      else
        hi = mid;
    }
    const int lvl = lo + 1;
    if (lvl > static_cast<int>(level_max_y.size()))
      level_max_y.push_back(y);
    else
      level_max_y[lvl - 1] = std::max(level_max_y[lvl - 1], y);
    for (; i < j; ++i) level[order[i]] = lvl;
  }
  return level;
}

FrontLayering pareto_levels(std::vector<ScoredPair> pairs) {
  std::vector<std::pair<double, double>> points;
  points.reserve(pairs.size());
  for (const auto& p : pairs) points.emplace_back(p.fitness, p.diversity);
  FrontLayering out;
  out.pairs = std::move(pairs);
  out.level = pareto_level_indices(points);
  out.max_level = out.level.empty() ? 0 : *std::max_element(out.level.begin(), out.level.end());
  return out;
}

std::pair<std::set<std::string>, std::set<std::string>> select_top_fronts(
    const FrontLayering& layering, int top_fronts) {
  if (top_fronts < 1) throw validation_error("front selection needs i >= 1");
  std::set<std::string> positions;
  std::set<std::string> candidates;
  for (std::size_t i = 0; i < layering.pairs.size(); ++i) {
    if (layering.level[i] <= top_fronts) {
      positions.insert(layering.pairs[i].position);
      candidates.insert(layering.pairs[i].candidate);
    }
  }
  return {std::move(positions), std::move(candidates)};
}

BipartiteWeights level_weights(const FrontLayering& layering) {
  std::vector<BipartiteWeights::Edge> edges;
  edges.reserve(layering.pairs.size());
  for (std::size_t i = 0; i < layering.pairs.size(); ++i)
    edges.emplace_back(layering.pairs[i].position, layering.pairs[i].candidate,
                       1.0 / static_cast<double>(layering.level[i]));
  return BipartiteWeights(edges);
}

}  // namespace fairea
