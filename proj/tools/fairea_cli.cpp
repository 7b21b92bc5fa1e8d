// Command-line front end: `generate` builds synthetic networks (and
// optionally a sampled scenario bundle), `assign` runs one assignment
// method over a file bundle, `benchmark` runs the trial-based experiment
// harness. All randomness is seed-controlled and the seed is echoed, so
// identical invocations produce byte-identical outputs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "fairea/algorithm.hpp"
#include "fairea/evaluation.hpp"
#include "fairea/harness.hpp"
#include "fairea/io.hpp"
#include "fairea/seeding.hpp"
#include "fairea/synthgen.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitScale = 4;

std::uint64_t pick_seed(const CLI::Option* seed_option, std::uint64_t seed_value) {
  if (seed_option->count() > 0) return seed_value;
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

struct GenerateArgs {
  std::string model = "sf";
  int nodes = 1000;
  int edges_per_node = 4;
  double minority = 0.31;
  double target_assort = 0.39;
  double assort_tolerance = 0.02;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  double open_fraction = 0.0;  // > 0: also emit a scenario bundle
  std::string pool = "copy";
  std::string fitness = "f1";
  int qualified = 4;
};

int run_generate(const GenerateArgs& args, std::uint64_t seed) {
  namespace fs = std::filesystem;
  fairea::AttributedGraph graph;
  if (args.model == "sf") {
    graph = fairea::generate_scale_free(args.nodes, args.edges_per_node, seed);
    try {
      graph = fairea::plant_attributes(graph, args.minority, args.target_assort,
                                       args.assort_tolerance,
                                       fairea::mix_seed(seed, 0x706c616eULL));
    } catch (const fairea::planting_error& e) {
      std::cerr << "error: " << e.what()
                << " (best achieved " << fairea::format_double(e.best_achieved()) << ")\n";
      return 1;
    }
  } else if (args.model == "fo") {
    graph = fairea::generate_org_network(fairea::OrgChartSpec::functional_preset(), seed);
  } else if (args.model == "do") {
    graph = fairea::generate_org_network(fairea::OrgChartSpec::divisional_preset(), seed);
  } else {
    throw fairea::validation_error("unknown model '" + args.model + "'");
  }

  fs::create_directories(args.out_dir);
  const auto edges_path = (fs::path(args.out_dir) / "edges.tsv").string();
  const auto nodes_path = (fs::path(args.out_dir) / "nodes.csv").string();
  fairea::write_graph(graph, edges_path, nodes_path);

  std::cout << "seed " << seed << "\n";
  std::cout << "nodes " << graph.node_count() << "\n";
  std::cout << "edges " << graph.edge_count() << "\n";
  try {
    const double r = fairea::assortativity(fairea::build_mixing_matrix(graph, true));
    std::cout << "assortativity " << fairea::format_double(r) << "\n";
  } catch (const fairea::degenerate_error&) {
    std::cout << "assortativity undefined\n";
  }

  if (args.open_fraction > 0.0) {
    fairea::ScenarioSpec scenario;
    scenario.open_fraction = args.open_fraction;
    scenario.pool_mode = fairea::pool_mode_from_string(args.pool);
    scenario.fitness_mode = fairea::fitness_mode_from_string(args.fitness);
    scenario.qualified_per_candidate = args.qualified;
    scenario.seed = fairea::mix_seed(seed, 0x7363656eULL);
    const auto instance = fairea::sample_scenario(graph, scenario);
    fairea::write_graph(instance.graph(), edges_path, nodes_path);  // opened positions
    fairea::write_candidates(instance, (fs::path(args.out_dir) / "candidates.csv").string());
    fairea::write_fitness(instance, (fs::path(args.out_dir) / "fitness.csv").string());
    std::cout << "open-positions " << instance.open_count() << "\n";
    std::cout << "candidates " << instance.candidate_count() << "\n";
  }
  return 0;
}

struct AssignArgs {
  fairea::FileBundle bundle;
  std::string method = "fairea";
  std::string threshold;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
};

int run_assign(const AssignArgs& args, std::uint64_t seed) {
  namespace fs = std::filesystem;
  const auto instance = fairea::ingest(args.bundle);

  fairea::Matching matching;
  std::vector<std::string> notifications;
  if (args.method == "fairea") {
    fairea::FairEAConfig config;
    if (!args.threshold.empty())
      config.isolation_thresholds = fairea::uniform_thresholds(
          instance.graph(), fairea::ThresholdSpec::parse(args.threshold));
    auto outcome = fairea::fairea_assign(instance, config);
    matching = std::move(outcome.matching);
    notifications = std::move(outcome.notifications);
  } else if (args.method == "random") {
    matching = fairea::random_baseline(instance, seed);
  } else if (args.method == "hungarian") {
    matching = fairea::hungarian_baseline(instance);
  } else if (args.method == "oracle") {
    matching = fairea::exact_oracle(instance, args.lambda).best;
  } else {
    throw fairea::validation_error("unknown method '" + args.method + "'");
  }

  const auto weights = instance.qualification_weights();
  const double fs_h = fairea::max_weight_complete_matching(weights).total_weight;
  const double fs_l = fairea::min_weight_complete_matching(weights).total_weight;
  const double fs_a = fairea::overall_fit_score(instance, matching);
  const double pif = fairea::percentage_improvement_fitness(fs_a, fs_l, fs_h);

  std::optional<double> ac_b, ac_a, pia, isolation;
  try {
    ac_b = fairea::assortativity(fairea::build_mixing_matrix(instance.graph(), true));
  } catch (const fairea::degenerate_error&) {
  }
  const auto after = fairea::apply_matching(instance, matching);
  try {
    ac_a = fairea::assortativity(fairea::build_mixing_matrix(after, false));
  } catch (const fairea::degenerate_error&) {
  }
  if (ac_b && ac_a && std::abs(*ac_b) >= 1e-12)
    pia = fairea::percentage_improvement_assortativity(*ac_b, *ac_a);
  const bool teams_everywhere = std::all_of(
      after.nodes().begin(), after.nodes().end(),
      [](const fairea::NodeRecord& n) { return !n.team.empty(); });
  if (teams_everywhere && after.node_count() > 0) isolation = fairea::isolation_score(after);

  fs::create_directories(args.out_dir);
  fairea::write_matching(matching, (fs::path(args.out_dir) / "matching.csv").string());
  std::ofstream metrics((fs::path(args.out_dir) / "metrics.txt").string(), std::ios::binary);
  metrics << "method " << args.method << "\n";
  metrics << "seed " << seed << "\n";
  metrics << "m " << instance.open_count() << "\n";
  metrics << "t " << instance.candidate_count() << "\n";
  metrics << "k " << instance.graph().class_count() << "\n";
  metrics << "fs-a " << fairea::format_double(fs_a) << "\n";
  metrics << "fs-l " << fairea::format_double(fs_l) << "\n";
  metrics << "fs-h " << fairea::format_double(fs_h) << "\n";
  metrics << "pif " << fairea::format_double(pif) << "\n";
  if (ac_b) metrics << "ac-b " << fairea::format_double(*ac_b) << "\n";
  if (ac_a) metrics << "ac-a " << fairea::format_double(*ac_a) << "\n";
  if (pia) metrics << "pia " << fairea::format_double(*pia) << "\n";
  if (isolation) metrics << "isolation " << fairea::format_double(*isolation) << "\n";
  metrics << "notification-count " << notifications.size() << "\n";
  for (const auto& team : notifications) metrics << "notification " << team << "\n";

  std::cout << "seed " << seed << "\n";
  std::cout << "matched " << matching.size() << "\n";
  std::cout << "fs-a " << fairea::format_double(fs_a) << "\n";
  std::cout << "pif " << fairea::format_double(pif) << "\n";
  if (pia) std::cout << "pia " << fairea::format_double(*pia) << "\n";
  for (const auto& team : notifications) std::cout << "notification " << team << "\n";
  return 0;
}

struct BenchmarkArgs {
  std::string config_file;
  std::string out_dir = ".";
  int jobs = 1;
  std::string seed_override;
  std::string trials_override;
};

int run_benchmark(const BenchmarkArgs& args) {
  auto config = fairea::read_experiment_config(args.config_file);
  try {
    if (!args.seed_override.empty()) config.master_seed = std::stoull(args.seed_override);
    if (!args.trials_override.empty()) config.trials = std::stoi(args.trials_override);
  } catch (const std::exception&) {
    throw fairea::validation_error("bad --seed or --trials override");
  }

  const auto report = config.thresholds.empty()
                          ? fairea::run_experiment(config, args.jobs)
                          : fairea::isolation_sweep(config, args.jobs);
  fairea::write_report(report, args.out_dir);

  std::cout << "seed " << config.master_seed << "\n";
  std::cout << "cells " << report.cells.size() << "\n";
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    for (const auto& [method, summary] : report.cells[i].summary) {
      std::cout << "cell " << i << " " << method << " pif-mean "
                << fairea::format_double(summary.pif_mean) << " pia-mean "
                << fairea::format_double(summary.pia_mean) << "\n";
      std::cerr << "cell " << i << " " << method << " wall-clock "
                << fairea::format_double(summary.wall_clock_seconds) << "s\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assignment benchmarking for organizational network diversity"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic network (and scenario)");
  generate->add_option("--model", gen.model, "sf | fo | do")->capture_default_str();
  generate->add_option("--nodes", gen.nodes)->capture_default_str();
  generate->add_option("--edges-per-node", gen.edges_per_node)->capture_default_str();
  generate->add_option("--minority", gen.minority)->capture_default_str();
  generate->add_option("--target-assort", gen.target_assort)->capture_default_str();
  generate->add_option("--assort-tolerance", gen.assort_tolerance)->capture_default_str();
  auto* gen_seed = generate->add_option("--seed", gen.seed, "auto-generated when omitted");
  generate->add_option("--out", gen.out_dir)->capture_default_str();
  generate->add_option("--open-fraction", gen.open_fraction,
                       "also emit candidates.csv and fitness.csv");
  generate->add_option("--pool", gen.pool, "copy | double")->capture_default_str();
  generate->add_option("--fitness", gen.fitness, "f1 | f2")->capture_default_str();
  generate->add_option("--qualified", gen.qualified)->capture_default_str();

  AssignArgs assign;
  auto* assign_cmd = app.add_subcommand("assign", "Assign candidates to open positions");
  assign_cmd->add_option("--edges", assign.bundle.edges_file)->required();
  assign_cmd->add_option("--nodes", assign.bundle.nodes_file)->required();
  assign_cmd->add_option("--candidates", assign.bundle.candidates_file)->required();
  assign_cmd->add_option("--fitness", assign.bundle.fitness_file)->required();
  assign_cmd->add_option("--method", assign.method, "fairea | random | hungarian | oracle")
      ->capture_default_str();
  assign_cmd->add_option("--threshold", assign.threshold,
                         "isolation threshold: integer or fraction of team size");
  assign_cmd->add_option("--lambda", assign.lambda, "oracle fitness weight")
      ->capture_default_str();
  auto* assign_seed = assign_cmd->add_option("--seed", assign.seed);
  assign_cmd->add_option("--out", assign.out_dir)->capture_default_str();

  BenchmarkArgs bench;
  auto* bench_cmd = app.add_subcommand("benchmark", "Run the trial-based experiment harness");
  bench_cmd->add_option("--config", bench.config_file)->required();
  bench_cmd->add_option("--out", bench.out_dir)->capture_default_str();
  bench_cmd->add_option("--jobs", bench.jobs, "parallel trial workers")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed_override, "override master seed");
  bench_cmd->add_option("--trials", bench.trials_override, "override trial count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(gen, pick_seed(gen_seed, gen.seed));
    if (assign_cmd->parsed()) return run_assign(assign, pick_seed(assign_seed, assign.seed));
    if (bench_cmd->parsed()) return run_benchmark(bench);
  } catch (const fairea::infeasible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& pos : e.blocking_positions()) std::cerr << "blocking " << pos << "\n";
    return kExitInfeasible;
  } catch (const fairea::scale_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitScale;
  } catch (const fairea::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const fairea::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
