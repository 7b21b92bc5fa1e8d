#include "fairea/bipartite.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

namespace fairea {

void Matching::assign(const std::string& position, const std::string& candidate) {
  if (by_position_.count(position))
    throw validation_error("position '" + position + "' already matched");
  if (by_candidate_.count(candidate))
    throw validation_error("candidate '" + candidate + "' already matched");
  by_position_.emplace(position, candidate);
  by_candidate_.emplace(candidate, position);
}

void Matching::erase_position(const std::string& position) {
  auto it = by_position_.find(position);
  if (it == by_position_.end()) return;
  by_candidate_.erase(it->second);
  by_position_.erase(it);
}

const std::string& Matching::candidate_for(const std::string& position) const {
  auto it = by_position_.find(position);
  if (it == by_position_.end()) throw validation_error("position '" + position + "' not matched");
  return it->second;
}

const std::string& Matching::position_for(const std::string& candidate) const {
  auto it = by_candidate_.find(candidate);
  if (it == by_candidate_.end()) throw validation_error("candidate '" + candidate + "' not matched");
  return it->second;
}

BipartiteWeights::BipartiteWeights(const std::vector<Edge>& edges) {
  std::set<std::string> lefts, rights;
  for (const auto& [l, r, w] : edges) {
    if (!(w > 0.0) || !std::isfinite(w))
      throw validation_error("nonpositive weight on edge " + l + " -> " + r);
    lefts.insert(l);
    rights.insert(r);
  }
  for (const auto& l : lefts)
    if (rights.count(l)) throw validation_error("id '" + l + "' appears on both sides");
  left_.assign(lefts.begin(), lefts.end());
  right_.assign(rights.begin(), rights.end());
  for (int i = 0; i < static_cast<int>(left_.size()); ++i) left_index_.emplace(left_[i], i);
  for (int i = 0; i < static_cast<int>(right_.size()); ++i) right_index_.emplace(right_[i], i);
  adjacency_.assign(left_.size(), {});
  for (const auto& [l, r, w] : edges)
    adjacency_[left_index_.at(l)].emplace_back(right_index_.at(r), w);
  for (auto& row : adjacency_) {
    std::sort(row.begin(), row.end());
    for (std::size_t i = 1; i < row.size(); ++i)
      if (row[i].first == row[i - 1].first)
        throw validation_error("duplicate edge in bipartite weights");
    edge_count_ += row.size();
  }
}

std::optional<double> BipartiteWeights::weight(const std::string& left,
                                               const std::string& right) const {
  auto li = left_index_.find(left);
  auto ri = right_index_.find(right);
  if (li == left_index_.end() || ri == right_index_.end()) return std::nullopt;
  const auto& row = adjacency_[li->second];
  auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(ri->second, 0.0));
  if (it == row.end() || it->first != ri->second) return std::nullopt;
  return it->second;
}

std::vector<BipartiteWeights::Edge> BipartiteWeights::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t l = 0; l < adjacency_.size(); ++l)
    for (const auto& [r, w] : adjacency_[l]) out.emplace_back(left_[l], right_[r], w);
  return out;
}

int BipartiteWeights::left_index(const std::string& id) const {
  auto it = left_index_.find(id);
  if (it == left_index_.end()) throw validation_error("unknown left id '" + id + "'");
  return it->second;
}

int BipartiteWeights::right_index(const std::string& id) const {
  auto it = right_index_.find(id);
  if (it == right_index_.end()) throw validation_error("unknown right id '" + id + "'");
  return it->second;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hungarian-style alternating-tree search with dual labels and slacks.
struct DualSearch {
  const BipartiteWeights& weights;
  int left_count;
  int right_count;
  std::vector<double> label_left;
  std::vector<double> label_right;
  std::vector<int> match_left;   // -1 = unmatched
  std::vector<int> match_right;  // -1 = unmatched

  explicit DualSearch(const BipartiteWeights& w)
      : weights(w),
        left_count(static_cast<int>(w.left_ids().size())),
        right_count(static_cast<int>(w.right_ids().size())),
        match_left(left_count, -1),
        match_right(right_count, -1) {}

  // l(o) = max incident weight, l(c) = 0: feasible for every edge.
  void reset_labels() {
    label_left.assign(left_count, 0.0);
    label_right.assign(right_count, 0.0);
    for (int l = 0; l < left_count; ++l)
      for (const auto& [r, w] : weights.adjacency()[l])
        label_left[l] = std::max(label_left[l], w);
  }

#ifndef NDEBUG
  void assert_dual_feasibility() const {
    for (int l = 0; l < left_count; ++l)
      for (const auto& [r, w] : weights.adjacency()[l])
        assert(label_left[l] + label_right[r] >= w - 1e-9);
  }
#endif

  // Grows an alternating tree from the unmatched left node `root` and
  // augments along the path found. Returns false when no path exists.
  bool augment(int root) {
    std::vector<double> slack(right_count, kInf);
    std::vector<int> slack_from(right_count, -1);
    std::vector<char> in_tree_left(left_count, 0);
    std::vector<char> in_tree_right(right_count, 0);
    std::vector<int> entered_via(left_count, -1);  // matched right that pulled the left in

    auto add_left = [&](int l, int via_right) {
      in_tree_left[l] = 1;
      entered_via[l] = via_right;
      for (const auto& [r, w] : weights.adjacency()[l]) {
        if (in_tree_right[r]) continue;
        const double s = label_left[l] + label_right[r] - w;
        if (s < slack[r]) {
          slack[r] = s;
          slack_from[r] = l;
        }
      }
    };

    add_left(root, -1);
    while (true) {
      int tight = -1;
      for (int r = 0; r < right_count; ++r)
        if (!in_tree_right[r] && slack_from[r] >= 0 && slack[r] <= 0.0) {
          tight = r;
          break;
        }
      if (tight < 0) {
        double delta = kInf;
        int argmin = -1;
        for (int r = 0; r < right_count; ++r)
          if (!in_tree_right[r] && slack[r] < delta) {
            delta = slack[r];
            argmin = r;
          }
        if (argmin < 0) return false;  // no edge leaves the tree
        for (int l = 0; l < left_count; ++l)
          if (in_tree_left[l]) label_left[l] -= delta;
        for (int r = 0; r < right_count; ++r) {
          if (in_tree_right[r])
            label_right[r] += delta;
          else if (slack_from[r] >= 0)
            slack[r] -= delta;
        }
#ifndef NDEBUG
        assert_dual_feasibility();
#endif
        tight = argmin;  // its slack is now exactly zero
      }
      const int matched_left = match_right[tight];
      if (matched_left < 0) {
        // Augment: flip the alternating path back to the root.
        int r = tight;
        while (r >= 0) {
          const int l = slack_from[r];
          const int prev = entered_via[l];
          match_right[r] = l;
          match_left[l] = r;
          r = prev;
        }
        return true;
      }
      in_tree_right[tight] = 1;
      add_left(matched_left, tight);
    }
  }

  Matching to_matching() const {
    Matching m;
    for (int l = 0; l < left_count; ++l)
      if (match_left[l] >= 0)
        m.assign(weights.left_ids()[l], weights.right_ids()[match_left[l]]);
    return m;
  }
};

double edge_weight_or_throw(const BipartiteWeights& weights, const std::string& l,
                            const std::string& r) {
  auto w = weights.weight(l, r);
  if (!w) throw validation_error("pair " + l + " -> " + r + " is not a qualified edge");
  return *w;
}

// Total recomputed from the weight table in left-id order, so equal
// matchings always produce bit-identical totals.
double total_of(const BipartiteWeights& weights, const Matching& m) {
  double total = 0.0;
  for (const auto& [l, r] : m.pairs()) total += edge_weight_or_throw(weights, l, r);
  return total;
}

}  // namespace

WeightedMatching max_weight_complete_matching(const BipartiteWeights& weights) {
  DualSearch search(weights);
  search.reset_labels();
  for (int l = 0; l < search.left_count; ++l) {
    if (!search.augment(l))
      throw infeasible_error("no complete matching", {weights.left_ids()[l]});
  }
  WeightedMatching out{search.to_matching(), 0.0};
  out.total_weight = total_of(weights, out.matching);
  return out;
}

WeightedMatching min_weight_complete_matching(const BipartiteWeights& weights) {
  double max_w = 0.0;
  for (const auto& row : weights.adjacency())
    for (const auto& [r, w] : row) max_w = std::max(max_w, w);
  std::vector<BipartiteWeights::Edge> shifted;
  shifted.reserve(weights.edge_count());
  for (auto& [l, r, w] : weights.edges()) shifted.emplace_back(l, r, max_w + 1.0 - w);
  const BipartiteWeights flipped(shifted);
  WeightedMatching out{max_weight_complete_matching(flipped).matching, 0.0};
  out.total_weight = total_of(weights, out.matching);
  return out;
}

int max_cardinality_matching(const BipartiteWeights& weights) {
  // Hopcroft-Karp. The unit tests check it against a plain recursive
  // augmenting-path oracle.
  const auto& adj = weights.adjacency();
  const int ln = static_cast<int>(weights.left_ids().size());
  const int rn = static_cast<int>(weights.right_ids().size());
  std::vector<int> match_l(ln, -1), match_r(rn, -1), layer(ln);
  constexpr int unreached = std::numeric_limits<int>::max();

  auto bfs = [&]() {
    std::deque<int> queue;
    for (int l = 0; l < ln; ++l) {
      if (match_l[l] < 0) {
        layer[l] = 0;
        queue.push_back(l);
      } else {
        layer[l] = unreached;
      }
    }
    bool found_free = false;
    while (!queue.empty()) {
      const int l = queue.front();
      queue.pop_front();
      for (const auto& [r, w] : adj[l]) {
        const int next = match_r[r];
        if (next < 0) {
          found_free = true;
        } else if (layer[next] == unreached) {
          layer[next] = layer[l] + 1;
          queue.push_back(next);
        }
      }
    }
    return found_free;
  };

  std::function<bool(int)> dfs = [&](int l) {
    for (const auto& [r, w] : adj[l]) {
      const int next = match_r[r];
      if (next < 0 || (layer[next] == layer[l] + 1 && dfs(next))) {
        match_l[l] = r;
        match_r[r] = l;
        return true;
      }
    }
    layer[l] = unreached;
    return false;
  };

  int size = 0;
  while (bfs())
    for (int l = 0; l < ln; ++l)
      if (match_l[l] < 0 && dfs(l)) ++size;
  return size;
}

Matching incremental_rematch(const BipartiteWeights& weights, const Matching& committed,
                             const ReweighFn& reweigh) {
  BipartiteWeights current = weights;
  Matching matching = committed;
  for (const auto& [l, r] : matching.pairs()) edge_weight_or_throw(current, l, r);

  while (true) {
    DualSearch search(current);
    for (const auto& [l, r] : matching.pairs()) {
      const int li = current.left_index(l);
      const int ri = current.right_index(r);
      search.match_left[li] = ri;
      search.match_right[ri] = li;
    }
    int next_unmatched = -1;
    for (int l = 0; l < search.left_count; ++l)
      if (search.match_left[l] < 0) {
        next_unmatched = l;
        break;
      }
    if (next_unmatched < 0) return matching;

    search.reset_labels();
    if (!search.augment(next_unmatched))
      throw infeasible_error("stuck: infeasible under qualification",
                             {current.left_ids()[next_unmatched]});
    matching = search.to_matching();

    if (reweigh) {
      BipartiteWeights next = reweigh(matching);
      if (next.left_ids() != current.left_ids() || next.right_ids() != current.right_ids())
        throw validation_error("reweigh changed the bipartite node sets");
      for (const auto& [l, r] : matching.pairs()) edge_weight_or_throw(next, l, r);
      current = std::move(next);
    }
  }
}

}  // namespace fairea
