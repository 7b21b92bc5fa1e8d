#include "fairea/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

namespace fairea {

AttributedGraph::AttributedGraph(int class_count) { set_class_count(class_count); }

void AttributedGraph::set_class_count(int k) {
  if (k < 1) throw validation_error("class count must be >= 1");
  for (const auto& n : nodes_) {
    if (n.class_index >= k)
      throw validation_error("node '" + n.id + "' has class outside [0, k)");
  }
  class_count_ = k;
}

int AttributedGraph::add_node(NodeRecord record) {
  if (record.id.empty()) throw validation_error("empty node id");
  if (index_.count(record.id)) throw validation_error("duplicate node id '" + record.id + "'");
  if (record.class_index >= class_count_ || record.class_index < kUnassigned)
    throw validation_error("node '" + record.id + "' has class outside [0, k)");
  if (record.status == NodeStatus::filled && record.class_index < 0)
    throw validation_error("filled node '" + record.id + "' has no class");
  const int idx = static_cast<int>(nodes_.size());
  index_.emplace(record.id, idx);
  nodes_.push_back(std::move(record));
  adjacency_.emplace_back();
  return idx;
}

std::uint64_t AttributedGraph::edge_key(int u, int v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

void AttributedGraph::add_edge(const std::string& u, const std::string& v) {
  add_edge_by_index(index_of(u), index_of(v));
}

void AttributedGraph::add_edge_by_index(int u, int v) {
  if (u < 0 || v < 0 || u >= node_count() || v >= node_count())
    throw validation_error("edge endpoint index out of range");
  if (u == v) throw validation_error("self-loop on node '" + nodes_[u].id + "'");
  const auto key = edge_key(u, v);
  if (edge_keys_.count(key))
    throw validation_error("duplicate edge " + nodes_[u].id + " -- " + nodes_[v].id);
  edge_keys_.insert(key);
  edges_.emplace_back(std::min(u, v), std::max(u, v));
  adjacency_[u].push_back(v);
  adjacency_[v].push_back(u);
}

int AttributedGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw validation_error("unknown node id '" + id + "'");
  return it->second;
}

std::optional<int> AttributedGraph::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool AttributedGraph::has_edge(int u, int v) const {
  if (u == v) return false;
  return edge_keys_.count(edge_key(u, v)) > 0;
}

void AttributedGraph::set_class(int index, int class_index) {
  auto& n = nodes_.at(index);
  if (class_index >= class_count_ || class_index < kUnassigned)
    throw validation_error("class outside [0, k) for node '" + n.id + "'");
  if (n.status == NodeStatus::filled && class_index < 0)
    throw validation_error("cannot unassign class of filled node '" + n.id + "'");
  n.class_index = class_index;
}

void AttributedGraph::set_status(int index, NodeStatus status) {
  auto& n = nodes_.at(index);
  if (status == NodeStatus::filled && n.class_index < 0)
    throw validation_error("cannot mark unresolved node '" + n.id + "' as filled");
  n.status = status;
}

void AttributedGraph::set_team(int index, std::string team) { nodes_.at(index).team = std::move(team); }
void AttributedGraph::set_level(int index, std::string level) { nodes_.at(index).level = std::move(level); }

std::vector<int> AttributedGraph::open_positions() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (nodes_[i].status == NodeStatus::open) out.push_back(i);
  return out;
}

bool AttributedGraph::any_team() const {
  return std::any_of(nodes_.begin(), nodes_.end(), [](const NodeRecord& n) { return !n.team.empty(); });
}

bool AttributedGraph::any_level() const {
  return std::any_of(nodes_.begin(), nodes_.end(), [](const NodeRecord& n) { return !n.level.empty(); });
}

MixingMatrix::MixingMatrix(int class_count) : class_count_(class_count) {
  if (class_count < 1) throw validation_error("mixing matrix needs k >= 1");
  entries_.assign(static_cast<std::size_t>(class_count) * class_count, 0.0);
}

double MixingMatrix::total() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0.0);
}

MixingMatrix build_mixing_matrix(const AttributedGraph& graph, bool restrict_to_filled) {
  const int k = graph.class_count();
  std::vector<long long> counts(static_cast<std::size_t>(k) * k, 0);
  long long in_scope = 0;
  for (const auto& [u, v] : graph.edges()) {
    const auto& nu = graph.node(u);
    const auto& nv = graph.node(v);
    if (restrict_to_filled &&
        (nu.status != NodeStatus::filled || nv.status != NodeStatus::filled))
      continue;
    if (nu.class_index < 0 || nv.class_index < 0) continue;
    counts[static_cast<std::size_t>(nu.class_index) * k + nv.class_index] += 1;
    counts[static_cast<std::size_t>(nv.class_index) * k + nu.class_index] += 1;
    ++in_scope;
  }
  if (in_scope == 0) throw degenerate_error("empty mixing scope");
  MixingMatrix mix(k);
  const double denom = 2.0 * static_cast<double>(in_scope);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      mix.at(i, j) = static_cast<double>(counts[static_cast<std::size_t>(i) * k + j]) / denom;
  return mix;
}

namespace {

double assortativity_from_entries(const MixingMatrix& mix) {
  const int k = mix.class_count();
  double trace = 0.0;
  double off_diagonal = 0.0;
  for (int i = 0; i < k; ++i) {
    trace += mix.at(i, i);
    for (int j = 0; j < k; ++j)
      if (i != j) off_diagonal += mix.at(i, j);
  }
  // S = sum of entries of U*U.
  double s = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double cell = 0.0;
      for (int l = 0; l < k; ++l) cell += mix.at(i, l) * mix.at(l, j);
      s += cell;
    }
  if (std::abs(1.0 - s) < 1e-12) throw degenerate_error("degenerate mixing");
  if (off_diagonal == 0.0) return 1.0;  // perfectly assortative, exact by definition
  return (trace - s) / (1.0 - s);
}

}  // namespace

double assortativity(const MixingMatrix& mix) { return assortativity_from_entries(mix); }

std::vector<int> neighbor_class_counts_at(const AttributedGraph& graph, int index) {
  std::vector<int> counts(graph.class_count(), 0);
  for (int nb : graph.neighbors(index)) {
    const int c = graph.node(nb).class_index;
    if (c >= 0) ++counts[c];
  }
  return counts;
}

std::vector<int> neighbor_class_counts(const AttributedGraph& graph, const std::string& node_id) {
  return neighbor_class_counts_at(graph, graph.index_of(node_id));
}

std::vector<int> hop_distances_from(const AttributedGraph& graph, int source) {
  std::vector<int> dist(graph.node_count(), -1);
  dist.at(source) = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : graph.neighbors(u)) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::map<std::string, int> hop_distances(const AttributedGraph& graph, const std::string& source) {
  const auto dist = hop_distances_from(graph, graph.index_of(source));
  std::map<std::string, int> out;
  for (int i = 0; i < graph.node_count(); ++i)
    if (dist[i] >= 0) out.emplace(graph.node(i).id, dist[i]);
  return out;
}

AssortativityTracker::AssortativityTracker(const AttributedGraph& graph)
    : graph_(&graph), class_count_(graph.class_count()) {
  classes_.assign(graph.node_count(), AttributedGraph::kUnassigned);
  pair_counts_.assign(static_cast<std::size_t>(class_count_) * class_count_, 0);
  for (int i = 0; i < graph.node_count(); ++i)
    if (graph.node(i).class_index >= 0) set_class(i, graph.node(i).class_index);
}

void AssortativityTracker::set_class(int index, int cls) {
  if (cls >= class_count_ || cls < AttributedGraph::kUnassigned)
    throw validation_error("tracker class outside [0, k)");
  const int old = classes_.at(index);
  if (old == cls) return;
  for (int nb : graph_->neighbors(index)) {
    const int nc = classes_[nb];
    if (nc < 0) continue;
    if (old >= 0) {
      pair_counts_[static_cast<std::size_t>(old) * class_count_ + nc] -= 1;
      pair_counts_[static_cast<std::size_t>(nc) * class_count_ + old] -= 1;
      total_endpoints_ -= 2;
    }
    if (cls >= 0) {
      pair_counts_[static_cast<std::size_t>(cls) * class_count_ + nc] += 1;
      pair_counts_[static_cast<std::size_t>(nc) * class_count_ + cls] += 1;
      total_endpoints_ += 2;
    }
  }
  classes_[index] = cls;
}

MixingMatrix AssortativityTracker::mixing() const {
  if (total_endpoints_ == 0) throw degenerate_error("empty mixing scope");
  MixingMatrix mix(class_count_);
  for (int i = 0; i < class_count_; ++i)
    for (int j = 0; j < class_count_; ++j)
      mix.at(i, j) =
          static_cast<double>(pair_counts_[static_cast<std::size_t>(i) * class_count_ + j]) /
          static_cast<double>(total_endpoints_);
  return mix;
}

double AssortativityTracker::assortativity() const { return fairea::assortativity(mixing()); }

}  // namespace fairea
