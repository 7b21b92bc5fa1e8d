#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairea/io.hpp"
#include "fairea/synthgen.hpp"

using namespace fairea;

namespace {

const std::filesystem::path kDir = std::filesystem::temp_directory_path() / "fairea_io_test";

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void spit(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
}

FileBundle write_valid_bundle() {
  spit(kDir / "edges.tsv", "a\tb\nb\to1\n");
  spit(kDir / "nodes.csv",
       "node_id,class,status\na,0,filled\nb,1,filled\no1,,open\no2,,open\n");
  spit(kDir / "candidates.csv", "candidate_id,class,origin_node\nc1,0,\nc2,1,o2\n");
  spit(kDir / "fitness.csv",
       "open_position_id,candidate_id,weight\no1,c1,0.5\no1,c2,0.25\no2,c2,0.75\n");
  return {(kDir / "edges.tsv").string(), (kDir / "nodes.csv").string(),
          (kDir / "candidates.csv").string(), (kDir / "fitness.csv").string()};
}

}  // namespace

TEST_CASE("format_double round-trips exactly") {
  for (double v : {0.1, 1.0 / 3.0, 0.39, 1e-12, 123456.789, 1.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("a well-formed bundle ingests with the right shape") {
  const auto instance = ingest(write_valid_bundle());
  CHECK(instance.open_count() == 2);
  CHECK(instance.candidate_count() == 2);
  CHECK(instance.graph().class_count() == 2);
  CHECK(instance.fitness("o1", "c2") == 0.25);
  CHECK(instance.candidate("c2").origin_node == "o2");
}

TEST_CASE("generate, ingest, and re-emit is byte-identical") {
  const auto graph = generate_org_network(OrgChartSpec::functional_preset(), 5);
  std::filesystem::create_directories(kDir);
  const auto edges1 = (kDir / "g_edges.tsv").string();
  const auto nodes1 = (kDir / "g_nodes.csv").string();
  write_graph(graph, edges1, nodes1);
  const auto reread = read_graph(edges1, nodes1);
  const auto edges2 = (kDir / "g_edges2.tsv").string();
  const auto nodes2 = (kDir / "g_nodes2.csv").string();
  write_graph(reread, edges2, nodes2);
  CHECK(slurp(edges1) == slurp(edges2));
  CHECK(slurp(nodes1) == slurp(nodes2));
}

TEST_CASE("scenario files round-trip through ingest") {
  const auto graph = generate_scale_free(60, 3, 2);
  ScenarioSpec spec;
  spec.open_fraction = 0.2;
  spec.seed = 3;
  const auto instance = sample_scenario(plant_attributes(graph, 0.3, 0.2, 0.1, 1), spec);
  write_graph(instance.graph(), (kDir / "s_edges.tsv").string(), (kDir / "s_nodes.csv").string());
  write_candidates(instance, (kDir / "s_cands.csv").string());
  write_fitness(instance, (kDir / "s_fit.csv").string());
  const auto back = ingest({(kDir / "s_edges.tsv").string(), (kDir / "s_nodes.csv").string(),
                            (kDir / "s_cands.csv").string(), (kDir / "s_fit.csv").string()});
  CHECK(back.open_count() == instance.open_count());
  CHECK(back.qualified_pairs() == instance.qualified_pairs());
}

TEST_CASE("ingest failures carry file and line positions") {
  auto bundle = write_valid_bundle();
  SUBCASE("dangling candidate id in the fitness file") {
    spit(kDir / "fitness.csv",
         "open_position_id,candidate_id,weight\no1,c1,0.5\no2,ghost,0.75\n");
    try {
      ingest(bundle);
      FAIL("expected validation_error");
    } catch (const validation_error& e) {
      const std::string what = e.what();
      CHECK(what.find("fitness.csv:3") != std::string::npos);
      CHECK(what.find("'ghost'") != std::string::npos);
    }
  }
  SUBCASE("ids with commas cannot appear in CSV columns") {
    spit(kDir / "nodes.csv",
         "node_id,class,status\na,0,filled\nb,1,filled\no1,,open\no2,\"x,y\",open\n");
    CHECK_THROWS_AS(ingest(bundle), validation_error);
  }
  SUBCASE("bad status") {
    spit(kDir / "nodes.csv", "node_id,class,status\na,0,vacant\n");
    CHECK_THROWS_WITH(ingest(bundle), doctest::Contains("nodes.csv:2"));
  }
  SUBCASE("filled node without a class") {
    spit(kDir / "nodes.csv", "node_id,class,status\na,,filled\n");
    CHECK_THROWS_WITH(ingest(bundle), doctest::Contains("empty class"));
  }
  SUBCASE("weight outside (0,1]") {
    spit(kDir / "fitness.csv",
         "open_position_id,candidate_id,weight\no1,c1,0.5\no1,c2,1.5\no2,c2,0.75\n");
    CHECK_THROWS_WITH(ingest(bundle), doctest::Contains("fitness.csv:3"));
  }
  SUBCASE("unknown edge endpoint carries its line") {
    spit(kDir / "edges.tsv", "a\tb\nzz\to1\n");
    CHECK_THROWS_WITH(ingest(bundle), doctest::Contains("edges.tsv:2"));
  }
  SUBCASE("infeasible bundles are rejected") {
    spit(kDir / "fitness.csv",
         "open_position_id,candidate_id,weight\no1,c2,0.5\no2,c2,0.75\n");
    CHECK_THROWS_AS(ingest(bundle), infeasible_error);
  }
}

TEST_CASE("matching files are stable") {
  Matching m;
  m.assign("o2", "c1");
  m.assign("o1", "c9");
  write_matching(m, (kDir / "matching.csv").string());
  CHECK(slurp(kDir / "matching.csv") ==
        "open_position_id,candidate_id\no1,c9\no2,c1\n");
}

TEST_CASE("key-value files parse with comments and blank lines") {
  spit(kDir / "config.txt",
       "# comment\n\ntrials 7\nmethods fairea,random\n  master-seed 3 \n");
  const auto pairs = read_key_values((kDir / "config.txt").string());
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == std::pair<std::string, std::string>{"trials", "7"});
  CHECK(pairs[2].second == "3");

  const auto config = read_experiment_config((kDir / "config.txt").string());
  CHECK(config.trials == 7);
  CHECK(config.methods == std::vector<std::string>{"fairea", "random"});
  CHECK(config.master_seed == 3);

  spit(kDir / "bad.txt", "strange-key 1\n");
  CHECK_THROWS_WITH(read_experiment_config((kDir / "bad.txt").string()),
                    doctest::Contains("strange-key"));
}
