#include "fairea/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "fairea/graph.hpp"

namespace fairea {

OrgChartSpec OrgChartSpec::functional_preset() {
  OrgChartSpec spec;
  spec.layout = Layout::functional;
  spec.units = 6;
  spec.teams_per_unit = 2;
  spec.team_size = 24;
  spec.intra_density = 0.8;
  spec.minority_team_fraction = 0.3;
  return spec;
}

OrgChartSpec OrgChartSpec::divisional_preset() {
  OrgChartSpec spec;
  spec.layout = Layout::divisional;
  spec.units = 3;
  // 40 teams spread over the divisions; full cliques of 7 land the edge
  // total near the published chart reconstruction.
  spec.teams_per_unit = 14;
  spec.team_size = 7;
  spec.intra_density = 1.0;
  spec.minority_team_fraction = 0.3;
  return spec;
}

namespace {

std::string padded(const char* prefix, int value, int width) {
  std::string digits = std::to_string(value);
  std::string out(prefix);
  out.append(width > static_cast<int>(digits.size()) ? width - digits.size() : 0, '0');
  out += digits;
  return out;
}

}  // namespace

AttributedGraph generate_org_network(const OrgChartSpec& spec, std::uint64_t seed) {
  if (spec.units < 1 || spec.teams_per_unit < 1 || spec.team_size < 2)
    throw validation_error("inconsistent org chart spec");
  if (!(spec.intra_density > 0.0) || spec.intra_density > 1.0)
    throw validation_error("intra-team density outside (0, 1]");
  if (!(spec.minority_team_fraction > 0.0) || spec.minority_team_fraction >= 1.0)
    throw validation_error("minority team fraction outside (0, 1)");

  // The divisional chart has 40 teams over 3 divisions; allow the last
  // unit to carry the remainder instead of requiring divisibility.
  int total_teams = spec.units * spec.teams_per_unit;
  if (spec.layout == OrgChartSpec::Layout::divisional) total_teams = 40;

  std::mt19937_64 rng(seed);
  AttributedGraph graph(2);

  // Teams are assigned to units in contiguous blocks.
  std::vector<int> unit_of_team(total_teams);
  {
    const int base = total_teams / spec.units;
    const int remainder = total_teams % spec.units;
    int team = 0;
    for (int u = 0; u < spec.units; ++u) {
      const int count = base + (u < remainder ? 1 : 0);
      for (int i = 0; i < count; ++i) unit_of_team[team++] = u;
    }
  }

  // Whole teams carry one class.
  const int minority_teams =
      std::max(1, static_cast<int>(std::llround(spec.minority_team_fraction * total_teams)));
  std::vector<int> team_order(total_teams);
  std::iota(team_order.begin(), team_order.end(), 0);
  std::shuffle(team_order.begin(), team_order.end(), rng);
  std::vector<int> team_class(total_teams, 0);
  for (int i = 0; i < minority_teams; ++i) team_class[team_order[i]] = 1;

  std::vector<std::vector<int>> members(total_teams);
  for (int team = 0; team < total_teams; ++team) {
    const std::string team_id = padded("team", team, 3);
    for (int i = 0; i < spec.team_size; ++i) {
      NodeRecord node;
      node.id = padded("t", team, 3) + "." + padded("n", i, 3);
      node.status = NodeStatus::filled;
      node.class_index = team_class[team];
      node.team = team_id;
      node.level = i == 0 ? "lead" : "member";
      members[team].push_back(graph.add_node(node));
    }
  }

  // Intra-team wiring: spanning cycle first (teams stay connected by
  // construction), then random extra pairs up to the density target.
  for (int team = 0; team < total_teams; ++team) {
    const auto& m = members[team];
    const int s = static_cast<int>(m.size());
    for (int i = 0; i < s - 1; ++i) graph.add_edge_by_index(m[i], m[i + 1]);
    if (s > 2) graph.add_edge_by_index(m[s - 1], m[0]);

    const int all_pairs = s * (s - 1) / 2;
    const int target = static_cast<int>(std::llround(spec.intra_density * all_pairs));
    const int cycle_edges = s > 2 ? s : s - 1;
    int extra = target - cycle_edges;
    if (extra <= 0) continue;
    std::vector<std::pair<int, int>> candidates;
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j)
        if (!graph.has_edge(m[i], m[j])) candidates.emplace_back(m[i], m[j]);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (int e = 0; e < extra && e < static_cast<int>(candidates.size()); ++e)
      graph.add_edge_by_index(candidates[e].first, candidates[e].second);
  }

  // Hierarchy tree: team leads to their unit lead, unit leads to the root.
  std::vector<int> unit_lead(spec.units, -1);
  for (int team = 0; team < total_teams; ++team) {
    const int u = unit_of_team[team];
    if (unit_lead[u] < 0)
      unit_lead[u] = members[team][0];
    else
      graph.add_edge_by_index(unit_lead[u], members[team][0]);
  }
  for (int u = 1; u < spec.units; ++u) graph.add_edge_by_index(unit_lead[0], unit_lead[u]);

  return graph;
}

AttributedGraph generate_scale_free(int nodes, int edges_per_node, std::uint64_t seed,
                                    double triad_probability) {
  if (nodes < 10) throw validation_error("scale-free generator needs n >= 10");
  if (edges_per_node < 1 || edges_per_node >= nodes)
    throw validation_error("edges per node outside [1, n)");
  if (triad_probability < 0.0 || triad_probability > 1.0)
    throw validation_error("triad probability outside [0, 1]");

  std::mt19937_64 rng(seed);
  AttributedGraph graph(2);
  const int width = nodes >= 1000 ? 4 : 3;
  for (int i = 0; i < nodes; ++i) {
    NodeRecord node;
    node.id = padded("n", i, width);
    node.status = NodeStatus::filled;
    node.class_index = 0;
    graph.add_node(node);
  }

  std::vector<int> endpoints;  // one entry per edge endpoint: degree-proportional sampling
  endpoints.reserve(static_cast<std::size_t>(2) * edges_per_node * nodes);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const int m0 = edges_per_node;
  for (int v = m0; v < nodes; ++v) {
    std::vector<int> targets;
    int last_target = -1;
    auto attach = [&](int u) {
      targets.push_back(u);
      last_target = u;
    };
    auto already = [&](int u) {
      return u == v || std::find(targets.begin(), targets.end(), u) != targets.end();
    };
    auto preferential_pick = [&]() {
      for (int tries = 0; tries < 64; ++tries) {
        int u;
        if (endpoints.empty()) {
          u = static_cast<int>(std::uniform_int_distribution<int>(0, v - 1)(rng));
        } else {
          u = endpoints[std::uniform_int_distribution<std::size_t>(0, endpoints.size() - 1)(rng)];
        }
        if (!already(u)) return u;
      }
      for (int u = 0; u < v; ++u)  // deterministic fallback when rejections pile up
        if (!already(u)) return u;
      return -1;
    };

    for (int e = 0; e < edges_per_node; ++e) {
      int u = -1;
      if (e > 0 && unit(rng) < triad_probability && last_target >= 0) {
        // Triad formation: close a triangle through the previous target.
        std::vector<int> options;
        for (int w : graph.neighbors(last_target))
          if (!already(w) && !graph.has_edge(v, w)) options.push_back(w);
        if (!options.empty())
          u = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      }
      if (u < 0) u = preferential_pick();
      if (u < 0) break;  // fewer existing nodes than requested edges
      attach(u);
    }
    for (int u : targets) {
      graph.add_edge_by_index(v, u);
      endpoints.push_back(v);
      endpoints.push_back(u);
    }
  }
  return graph;
}

namespace {

double assortativity_or_one(const AssortativityTracker& tracker) {
  try {
    return tracker.assortativity();
  } catch (const degenerate_error&) {
    return 1.0;  // single effective class: fully segregated for planting purposes
  }
}

}  // namespace

AttributedGraph plant_attributes(const AttributedGraph& graph, double minority_fraction,
                                 double target_assortativity, double tolerance,
                                 std::uint64_t seed, int max_steps) {
  if (!(minority_fraction > 0.0) || !(minority_fraction < 1.0))
    throw validation_error("minority fraction outside (0, 1)");
  if (tolerance < 0.0) throw validation_error("negative tolerance");
  const int n = graph.node_count();
  const int minority = static_cast<int>(std::llround(minority_fraction * n));
  if (minority < 1 || minority >= n)
    throw validation_error("minority count degenerate for this graph size");

  AttributedGraph out = graph;
  out.set_class_count(2);

  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  AssortativityTracker tracker(out);
  std::vector<int> minority_nodes, majority_nodes;
  for (int i = 0; i < n; ++i) {
    const int cls = i < minority ? 1 : 0;
    tracker.set_class(order[i], cls);
    (cls == 1 ? minority_nodes : majority_nodes).push_back(order[i]);
  }

  double current = assortativity_or_one(tracker);
  auto distance = [&](double r) { return std::abs(r - target_assortativity); };

  for (int step = 0; step < max_steps && distance(current) > tolerance; ++step) {
    const std::size_t mi =
        std::uniform_int_distribution<std::size_t>(0, minority_nodes.size() - 1)(rng);
    const std::size_t ma =
        std::uniform_int_distribution<std::size_t>(0, majority_nodes.size() - 1)(rng);
    const int a = minority_nodes[mi];
    const int b = majority_nodes[ma];
    tracker.set_class(a, 0);
    tracker.set_class(b, 1);
    const double proposed = assortativity_or_one(tracker);
    if (distance(proposed) < distance(current)) {
      current = proposed;
      std::swap(minority_nodes[mi], majority_nodes[ma]);
    } else {
      tracker.set_class(b, 0);
      tracker.set_class(a, 1);
    }
  }
  if (distance(current) > tolerance)
    throw planting_error("target assortativity unreachable within budget", current);

  for (int i = 0; i < n; ++i) out.set_class(i, tracker.class_of(i));
  return out;
}

std::string to_string(PoolMode mode) {
  return mode == PoolMode::exact_copy ? "copy" : "double";
}

std::string to_string(FitnessMode mode) { return mode == FitnessMode::f1 ? "f1" : "f2"; }

PoolMode pool_mode_from_string(const std::string& text) {
  if (text == "copy" || text == "exact" || text == "exact-copy") return PoolMode::exact_copy;
  if (text == "double" || text == "double-copy") return PoolMode::double_copy;
  throw validation_error("unknown pool mode '" + text + "'");
}

FitnessMode fitness_mode_from_string(const std::string& text) {
  if (text == "f1" || text == "F1") return FitnessMode::f1;
  if (text == "f2" || text == "F2") return FitnessMode::f2;
  throw validation_error("unknown fitness mode '" + text + "'");
}

AssignmentInstance sample_scenario(const AttributedGraph& graph, const ScenarioSpec& spec) {
  const int n = graph.node_count();
  const int open_count = static_cast<int>(std::llround(spec.open_fraction * n));
  if (open_count < 1) throw validation_error("open fraction opens no position");
  if (open_count > n) throw validation_error("open fraction above 1");
  if (spec.qualified_per_candidate < 1)
    throw validation_error("qualified_per_candidate must be >= 1");
  for (const auto& node : graph.nodes())
    if (node.status != NodeStatus::filled || node.class_index < 0)
      throw validation_error("scenario sampling needs a fully filled network");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto positive_unit = [&]() { return 1.0 - unit(rng); };  // (0, 1]

  constexpr int kRetries = 100;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> opened(order.begin(), order.begin() + open_count);
    std::sort(opened.begin(), opened.end());

    AttributedGraph g = graph;
    std::vector<Candidate> candidates;
    const int copies = spec.pool_mode == PoolMode::double_copy ? 2 : 1;
    for (int idx : opened) {
      const auto& node = graph.node(idx);
      for (int c = 0; c < copies; ++c) {
        Candidate cand;
        cand.id = node.id + ".c" + std::to_string(c + 1);
        cand.class_index = node.class_index;
        cand.origin_node = node.id;
        candidates.push_back(std::move(cand));
      }
      g.set_status(idx, NodeStatus::open);
      g.set_class(idx, AttributedGraph::kUnassigned);
    }

    AssignmentInstance instance(std::move(g), std::move(candidates));
    std::vector<std::string> open_ids;
    for (int idx : opened) open_ids.push_back(graph.node(idx).id);
    const int per_candidate = std::min<int>(spec.qualified_per_candidate,
                                            static_cast<int>(open_ids.size()));

    for (const auto& cand : instance.candidates()) {
      std::vector<std::string> chosen;
      if (spec.fitness_mode == FitnessMode::f1) {
        std::vector<std::string> pool = open_ids;
        for (int pick = 0; pick < per_candidate; ++pick) {
          const std::size_t j =
              std::uniform_int_distribution<std::size_t>(pick, pool.size() - 1)(rng);
          std::swap(pool[pick], pool[j]);
          chosen.push_back(pool[pick]);
        }
      } else {
        // F2: nearest open positions to the candidate's origin, by hop
        // count on the full graph; ties at the cutoff break by id.
        const auto dist = hop_distances_from(graph, graph.index_of(cand.origin_node));
        std::vector<std::pair<int, std::string>> reachable;
        for (int idx : opened)
          if (dist[idx] >= 0) reachable.emplace_back(dist[idx], graph.node(idx).id);
        std::sort(reachable.begin(), reachable.end());
        for (int i = 0; i < per_candidate && i < static_cast<int>(reachable.size()); ++i)
          chosen.push_back(reachable[i].second);
      }
      for (const auto& pos : chosen) instance.set_fitness(pos, cand.id, positive_unit());
    }

    if (feasibility_check(instance)) return instance;
  }
  throw infeasible_error("scenario sampling stayed infeasible after retries");
}

}  // namespace fairea
