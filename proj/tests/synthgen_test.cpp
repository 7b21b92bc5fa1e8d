#include "doctest.h"

#include <algorithm>
#include <deque>
#include <numeric>
#include <map>
#include <set>

#include "fairea/synthgen.hpp"
#include "support/oracles.hpp"

using namespace fairea;

namespace {

bool subset_connected(const AttributedGraph& g, const std::vector<int>& nodes) {
  if (nodes.empty()) return true;
  std::set<int> members(nodes.begin(), nodes.end());
  std::set<int> seen{nodes[0]};
  std::deque<int> queue{nodes[0]};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u))
      if (members.count(v) && !seen.count(v)) {
        seen.insert(v);
        queue.push_back(v);
      }
  }
  return seen.size() == members.size();
}

double planted_assortativity(const AttributedGraph& g) {
  return assortativity(build_mixing_matrix(g, true));
}

}  // namespace

TEST_CASE("functional org chart matches the published shape") {
  const auto g = generate_org_network(OrgChartSpec::functional_preset(), 7);
  CHECK(g.node_count() == 288);
  CHECK(g.edge_count() >= 2342);  // 2602 +- 10%
  CHECK(g.edge_count() <= 2862);
  CHECK(planted_assortativity(g) >= 0.8);
  CHECK(g.any_team());
  CHECK(g.any_level());

  std::map<std::string, std::vector<int>> teams;
  for (int i = 0; i < g.node_count(); ++i) teams[g.node(i).team].push_back(i);
  CHECK(teams.size() == 12);
  for (const auto& [team, members] : teams) {
    CHECK(members.size() == 24);
    CHECK(subset_connected(g, members));  // construction guarantee
    // whole team carries one class
    std::set<int> classes;
    for (int idx : members) classes.insert(g.node(idx).class_index);
    CHECK(classes.size() == 1);
  }
  // the whole chart is connected through the hierarchy
  std::vector<int> everyone(g.node_count());
  std::iota(everyone.begin(), everyone.end(), 0);
  CHECK(subset_connected(g, everyone));
}

TEST_CASE("divisional org chart matches the published shape") {
  const auto g = generate_org_network(OrgChartSpec::divisional_preset(), 3);
  CHECK(g.node_count() >= 239);  // 265 +- 10%
  CHECK(g.node_count() <= 291);
  CHECK(g.edge_count() >= 829);  // 921 +- 10%
  CHECK(g.edge_count() <= 1013);
  CHECK(planted_assortativity(g) >= 0.8);
  std::map<std::string, std::vector<int>> teams;
  for (int i = 0; i < g.node_count(); ++i) teams[g.node(i).team].push_back(i);
  CHECK(teams.size() == 40);
}

TEST_CASE("scale-free generator") {
  SUBCASE("size and degree shape") {
    const auto g = generate_scale_free(1000, 4, 11);
    CHECK(g.node_count() == 1000);
    CHECK(g.edge_count() >= 3800);  // 4000 +- 5%
    CHECK(g.edge_count() <= 4200);
    std::vector<int> everyone(g.node_count());
    std::iota(everyone.begin(), everyone.end(), 0);
    CHECK(subset_connected(g, everyone));
  }
  SUBCASE("heavy tail across seeds") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto g = generate_scale_free(1000, 4, seed);
      std::vector<int> degree(g.node_count(), 0);
      for (const auto& [u, v] : g.edges()) {
        ++degree[u];
        ++degree[v];
      }
      CHECK(*std::min_element(degree.begin(), degree.end()) >= 1);
      auto sorted = degree;
      std::sort(sorted.begin(), sorted.end());
      const int median = sorted[sorted.size() / 2];
      const int max_degree = sorted.back();
      CHECK(max_degree > 10 * median);
      // top 1% of nodes hold well over the uniform 1% endpoint share
      long long top_share = 0, total = 0;
      for (int d : sorted) total += d;
      for (std::size_t i = sorted.size() - sorted.size() / 100; i < sorted.size(); ++i)
        top_share += sorted[i];
      CHECK(static_cast<double>(top_share) / static_cast<double>(total) >
            2.0 * (sorted.size() / 100) / static_cast<double>(sorted.size()));
    }
  }
}

TEST_CASE("attribute planting reaches its targets without touching topology") {
  const auto base = generate_scale_free(1000, 4, 11);
  SUBCASE("high segregation target") {
    const auto planted = plant_attributes(base, 0.31, 0.39, 0.02, 5);
    CHECK(std::abs(planted_assortativity(planted) - 0.39) <= 0.05);
    CHECK(planted.edges() == base.edges());
    int minority = 0;
    for (const auto& node : planted.nodes()) minority += node.class_index == 1;
    CHECK(minority == 310);
  }
  SUBCASE("disassortative target") {
    const auto planted = plant_attributes(base, 0.31, -0.30, 0.02, 5);
    CHECK(std::abs(planted_assortativity(planted) + 0.30) <= 0.05);
  }
  SUBCASE("unreachable target carries the best achieved value") {
    try {
      plant_attributes(base, 0.31, 0.99, 0.0001, 5, /*max_steps=*/50);
      FAIL("expected planting_error");
    } catch (const planting_error& e) {
      CHECK(std::abs(e.best_achieved()) <= 1.0);
    }
  }
}

TEST_CASE("swapping two same-class labels leaves the tracker unchanged") {
  const auto g = oracles::random_attributed_graph(9, 40, 2);
  AssortativityTracker tracker(g);
  const double before = tracker.assortativity();
  // pick two nodes of the same class and swap their labels
  int a = -1, b = -1;
  for (int i = 0; i < g.node_count() && b < 0; ++i) {
    if (g.node(i).class_index != 0) continue;
    (a < 0 ? a : b) = i;
  }
  REQUIRE(b >= 0);
  tracker.set_class(a, 0);
  tracker.set_class(b, 0);
  CHECK(tracker.assortativity() == before);
}

TEST_CASE("scenario sampling") {
  const auto base = generate_scale_free(200, 4, 3);
  const auto planted = plant_attributes(base, 0.3, 0.3, 0.05, 4);

  SUBCASE("exact-copy pool size equals the number of open positions") {
    ScenarioSpec spec;
    spec.open_fraction = 0.1;
    spec.seed = 8;
    const auto instance = sample_scenario(planted, spec);
    CHECK(instance.open_count() == 20);
    CHECK(instance.candidate_count() == 20);
    for (const auto& c : instance.candidates()) {
      CHECK(c.origin_node.size() > 0);
      CHECK(c.class_index == planted.node(c.origin_node).class_index);
    }
  }
  SUBCASE("double-copy pool doubles the candidates") {
    ScenarioSpec spec;
    spec.open_fraction = 0.1;
    spec.pool_mode = PoolMode::double_copy;
    spec.seed = 8;
    const auto instance = sample_scenario(planted, spec);
    CHECK(instance.candidate_count() == 40);
  }
  SUBCASE("weights live in (0,1] and qualification counts are right") {
    ScenarioSpec spec;
    spec.open_fraction = 0.15;
    spec.seed = 9;
    const auto instance = sample_scenario(planted, spec);
    std::map<std::string, int> per_candidate;
    for (const auto& [pos, cand, w] : instance.qualified_pairs()) {
      CHECK(w > 0.0);
      CHECK(w <= 1.0);
      ++per_candidate[cand];
    }
    for (const auto& c : instance.candidates()) CHECK(per_candidate[c.id] == 4);
  }
  SUBCASE("f2 qualifies exactly the nearest open positions") {
    ScenarioSpec spec;
    spec.open_fraction = 0.2;
    spec.fitness_mode = FitnessMode::f2;
    spec.seed = 12;
    const auto instance = sample_scenario(planted, spec);
    const auto open_ids = instance.open_position_ids();
    for (const auto& cand : instance.candidates()) {
      // BFS recomputation oracle with (distance, id) ordering
      const auto dist = hop_distances(planted, cand.origin_node);
      std::vector<std::pair<int, std::string>> ranked;
      for (const auto& pos : open_ids)
        if (dist.count(pos)) ranked.emplace_back(dist.at(pos), pos);
      std::sort(ranked.begin(), ranked.end());
      std::set<std::string> expected;
      for (std::size_t i = 0; i < ranked.size() && i < 4; ++i) expected.insert(ranked[i].second);
      std::set<std::string> actual;
      for (const auto& pos : open_ids)
        if (instance.qualified(pos, cand.id)) actual.insert(pos);
      CHECK(actual == expected);
    }
  }
  SUBCASE("identical seeds give identical instances") {
    ScenarioSpec spec;
    spec.open_fraction = 0.1;
    spec.seed = 21;
    const auto a = sample_scenario(planted, spec);
    const auto b = sample_scenario(planted, spec);
    CHECK(a.qualified_pairs() == b.qualified_pairs());
    CHECK(a.open_position_ids() == b.open_position_ids());
  }
  SUBCASE("fewer open positions than the qualification budget") {
    ScenarioSpec spec;
    spec.open_fraction = 0.01;  // 2 positions
    spec.seed = 5;
    const auto instance = sample_scenario(planted, spec);
    for (const auto& c : instance.candidates()) {
      int qualified = 0;
      for (const auto& pos : instance.open_position_ids())
        qualified += instance.qualified(pos, c.id);
      CHECK(qualified == instance.open_count());
    }
  }
}
