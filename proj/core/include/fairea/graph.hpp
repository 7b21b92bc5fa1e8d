#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fairea/errors.hpp"

namespace fairea {

enum class NodeStatus { filled, open };

// A position in the organizational network. Open positions may carry a
// class once a candidate has been tentatively or finally assigned to them;
// filled positions always carry one.
struct NodeRecord {
  std::string id;
  NodeStatus status = NodeStatus::filled;
  int class_index = -1;  // -1 = unassigned (open positions only)
  std::string team;      // empty = no team annotation
  std::string level;     // empty = no level annotation
};

// Unweighted undirected graph of positions with categorical attributes.
// Node order is preserved (file order / construction order); edges are
// deduplicated and stored with the lower node index first.
class AttributedGraph {
 public:
  static constexpr int kUnassigned = -1;

  AttributedGraph() = default;
  explicit AttributedGraph(int class_count);

  // Throws validation_error on duplicate id or class out of [0, k)
  // (filled nodes must be class-resolved). Returns the node index.
  int add_node(NodeRecord record);

  // Throws on unknown endpoint, self-loop, or duplicate edge.
  void add_edge(const std::string& u, const std::string& v);
  void add_edge_by_index(int u, int v);

  int class_count() const { return class_count_; }
  void set_class_count(int k);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  std::size_t edge_count() const { return edges_.size(); }

  const NodeRecord& node(int index) const { return nodes_.at(index); }
  const NodeRecord& node(const std::string& id) const { return nodes_.at(index_of(id)); }
  const std::vector<NodeRecord>& nodes() const { return nodes_; }

  int index_of(const std::string& id) const;
  std::optional<int> find(const std::string& id) const;
  bool has_node(const std::string& id) const { return find(id).has_value(); }

  const std::vector<int>& neighbors(int index) const { return adjacency_.at(index); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge(int u, int v) const;

  bool resolved(int index) const { return nodes_.at(index).class_index >= 0; }

  void set_class(int index, int class_index);  // kUnassigned allowed for open nodes
  void set_status(int index, NodeStatus status);
  void set_team(int index, std::string team);
  void set_level(int index, std::string level);

  // Indices of open positions, in node order.
  std::vector<int> open_positions() const;
  bool any_team() const;
  bool any_level() const;

 private:
  static std::uint64_t edge_key(int u, int v);

  int class_count_ = 1;
  std::vector<NodeRecord> nodes_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::pair<int, int>> edges_;
  std::unordered_set<std::uint64_t> edge_keys_;
  std::vector<std::vector<int>> adjacency_;
};

// k-by-k matrix of edge-endpoint fractions per ordered class pair.
// Symmetric for undirected graphs; entries sum to 1 when built from at
// least one class-resolved edge.
class MixingMatrix {
 public:
  explicit MixingMatrix(int class_count);

  int class_count() const { return class_count_; }
  double at(int i, int j) const { return entries_.at(index(i, j)); }
  double& at(int i, int j) { return entries_.at(index(i, j)); }
  double total() const;

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * class_count_ + j;
  }
  int class_count_ = 0;
  std::vector<double> entries_;
};

// Builds the mixing matrix over class-resolved edges. Each undirected
// edge contributes 1/(2E) to u_ij and u_ji (2/(2E) to u_ii). With
// restrict_to_filled, edges touching open positions are ignored, which
// realizes the filled-positions subgraph used for before-assignment
// assortativity. Throws degenerate_error("empty mixing scope") when no
// edge qualifies.
MixingMatrix build_mixing_matrix(const AttributedGraph& graph, bool restrict_to_filled);

// Newman's assortativity coefficient (Trace(U) - S) / (1 - S) where S is
// the elementwise sum of U*U. Result in [-1, 1]. Throws
// degenerate_error("degenerate mixing") when |1 - S| < 1e-12.
double assortativity(const MixingMatrix& mix);

// Per-class counts of class-resolved neighbors of a node. Unresolved
// open neighbors are excluded.
std::vector<int> neighbor_class_counts(const AttributedGraph& graph, const std::string& node_id);
std::vector<int> neighbor_class_counts_at(const AttributedGraph& graph, int index);

// Breadth-first hop counts from source; unreachable nodes are absent.
std::map<std::string, int> hop_distances(const AttributedGraph& graph, const std::string& source);
// Index-based variant; -1 marks unreachable nodes.
std::vector<int> hop_distances_from(const AttributedGraph& graph, int source);

// Incrementally maintained class-pair endpoint counts over one working
// class labeling. Supports O(degree) class reassignment, which is what
// attribute planting and exhaustive matching enumeration need instead of
// a full O(E) recount per step.
class AssortativityTracker {
 public:
  explicit AssortativityTracker(const AttributedGraph& graph);

  int class_of(int index) const { return classes_.at(index); }
  // cls = -1 clears the label. Counts only edges with both endpoints labeled.
  void set_class(int index, int cls);

  bool has_resolved_edge() const { return total_endpoints_ > 0; }
  double assortativity() const;  // throws degenerate_error like the free function
  MixingMatrix mixing() const;

 private:
  const AttributedGraph* graph_ = nullptr;
  int class_count_ = 0;
  std::vector<int> classes_;
  std::vector<long long> pair_counts_;  // directed endpoint counts, k*k
  long long total_endpoints_ = 0;       // = 2 * (labeled-labeled edges)
};

}  // namespace fairea
