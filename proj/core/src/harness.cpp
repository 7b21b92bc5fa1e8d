#include "fairea/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <thread>

#include "fairea/io.hpp"
#include "fairea/seeding.hpp"

namespace fairea {

AttributedGraph build_network(const NetworkSource& source) {
  switch (source.kind) {
    case NetworkSource::Kind::scale_free: {
      auto graph = generate_scale_free(source.nodes, source.edges_per_node, source.seed);
      return plant_attributes(graph, source.minority_fraction, source.target_assortativity,
                              source.plant_tolerance, mix_seed(source.seed, 0x706c616eULL));
    }
    case NetworkSource::Kind::functional_org:
      return generate_org_network(OrgChartSpec::functional_preset(), source.seed);
    case NetworkSource::Kind::divisional_org:
      return generate_org_network(OrgChartSpec::divisional_preset(), source.seed);
    case NetworkSource::Kind::files:
      return read_graph(source.edges_file, source.nodes_file);
  }
  throw validation_error("unknown network source");
}

namespace {

void run_indexed(int count, int jobs, const std::function<void(int)>& body) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  const int worker_count = std::min(jobs, count);
  std::vector<std::exception_ptr> errors(worker_count);
  for (int w = 0; w < worker_count; ++w) {
    workers.emplace_back([&, w] {
      try {
        while (true) {
          const int i = next.fetch_add(1);
          if (i >= count) break;
          body(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Matching run_method(const std::string& method, const AssignmentInstance& instance,
                    const ExperimentConfig& config, const std::optional<ThresholdSpec>& threshold,
                    std::uint64_t trial_seed, int* notified_teams) {
  if (method == "fairea") {
    FairEAConfig cfg;
    if (threshold) cfg.isolation_thresholds = uniform_thresholds(instance.graph(), *threshold);
    auto outcome = fairea_assign(instance, cfg);
    if (notified_teams) *notified_teams = static_cast<int>(outcome.notifications.size());
    return std::move(outcome.matching);
  }
  if (method == "random") return random_baseline(instance, mix_seed(trial_seed, 1));
  if (method == "hungarian") return hungarian_baseline(instance);
  if (method == "oracle") return exact_oracle(instance, config.oracle_lambda).best;
  throw validation_error("unknown method '" + method + "'");
}

MetricReport score_matching(const AssignmentInstance& instance, const Matching& matching,
                            double fs_l, double fs_h, std::optional<double> ac_b,
                            bool teams_everywhere) {
  MetricReport metrics;
  metrics.fit_lower = fs_l;
  metrics.fit_upper = fs_h;
  metrics.fit_score = overall_fit_score(instance, matching);
  metrics.pif = percentage_improvement_fitness(metrics.fit_score, fs_l, fs_h);
  metrics.ac_before = ac_b;

  const AttributedGraph after = apply_matching(instance, matching);
  try {
    metrics.ac_after = assortativity(build_mixing_matrix(after, false));
  } catch (const degenerate_error&) {
    metrics.ac_after = std::nullopt;
  }
  if (ac_b && metrics.ac_after && std::abs(*ac_b) >= 1e-12)
    metrics.pia = percentage_improvement_assortativity(*ac_b, *metrics.ac_after);
  if (teams_everywhere) metrics.isolation = isolation_score(after);
  return metrics;
}

MethodSummary summarize(const std::vector<TrialRecord>& records) {
  MethodSummary summary;
  std::vector<double> pif, pia, ac_after, isolation, notified;
  for (const auto& r : records) {
    if (!r.ok) {
      ++summary.failed;
      continue;
    }
    ++summary.ok;
    pif.push_back(r.metrics.pif);
    if (r.metrics.pia)
      pia.push_back(*r.metrics.pia);
    else
      ++summary.pia_not_applicable;
    if (r.metrics.ac_after) ac_after.push_back(*r.metrics.ac_after);
    if (r.metrics.isolation) isolation.push_back(*r.metrics.isolation);
    notified.push_back(static_cast<double>(r.notified_teams));
  }
  auto mean = [](const std::vector<double>& xs) {
    double sum = 0.0;
    for (double x : xs) sum += x;
    return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
  };
  auto stddev = [&](const std::vector<double>& xs, double mu) {
    if (xs.size() < 2) return 0.0;
    double sum = 0.0;
    for (double x : xs) sum += (x - mu) * (x - mu);
    return std::sqrt(sum / static_cast<double>(xs.size()));
  };
  summary.pif_mean = mean(pif);
  summary.pif_std = stddev(pif, summary.pif_mean);
  summary.pia_mean = mean(pia);
  summary.pia_std = stddev(pia, summary.pia_mean);
  if (!ac_after.empty()) summary.ac_after_mean = mean(ac_after);
  if (!isolation.empty()) summary.isolation_mean = mean(isolation);
  summary.notified_teams_mean = mean(notified);
  return summary;
}

std::vector<CellReport> make_cells(const ExperimentConfig& config, bool sweep) {
  std::vector<CellReport> cells;
  for (double open_fraction : config.open_fractions)
    for (PoolMode pool : config.pool_modes)
      for (FitnessMode fitness : config.fitness_modes) {
        if (sweep) {
          for (const auto& threshold : config.thresholds) {
            CellReport cell;
            cell.open_fraction = open_fraction;
            cell.pool_mode = pool;
            cell.fitness_mode = fitness;
            cell.threshold = threshold;
            cells.push_back(std::move(cell));
          }
        } else {
          CellReport cell;
          cell.open_fraction = open_fraction;
          cell.pool_mode = pool;
          cell.fitness_mode = fitness;
          cells.push_back(std::move(cell));
        }
      }
  return cells;
}

ExperimentReport run_cells(const ExperimentConfig& config, std::vector<CellReport> cells,
                           const std::vector<std::string>& methods, int jobs) {
  if (config.trials < 1) throw validation_error("trials must be >= 1");
  ExperimentReport report;
  report.config = config;

  const AttributedGraph network = build_network(config.network);
  report.network_nodes = network.node_count();
  report.network_edges = network.edge_count();
  try {
    report.network_assortativity = assortativity(build_mixing_matrix(network, true));
  } catch (const degenerate_error&) {
    report.network_assortativity = std::nullopt;
  }
  const bool teams_everywhere =
      network.node_count() > 0 &&
      std::all_of(network.nodes().begin(), network.nodes().end(),
                  [](const NodeRecord& n) { return !n.team.empty(); });

  for (auto& cell : cells) {
    for (const auto& method : methods)
      cell.trials[method].resize(config.trials);

    run_indexed(config.trials, jobs, [&](int trial) {
      const std::uint64_t trial_seed = mix_seed(config.master_seed, trial);
      ScenarioSpec scenario;
      scenario.open_fraction = cell.open_fraction;
      scenario.pool_mode = cell.pool_mode;
      scenario.fitness_mode = cell.fitness_mode;
      scenario.qualified_per_candidate = config.qualified_per_candidate;
      scenario.seed = trial_seed;

      AssignmentInstance instance;
      double fs_l = 0.0, fs_h = 0.0;
      std::optional<double> ac_b;
      std::string setup_error;
      try {
        instance = sample_scenario(network, scenario);
        const auto weights = instance.qualification_weights();
        fs_h = max_weight_complete_matching(weights).total_weight;
        fs_l = min_weight_complete_matching(weights).total_weight;
        try {
          ac_b = assortativity(build_mixing_matrix(instance.graph(), true));
        } catch (const degenerate_error&) {
          ac_b = std::nullopt;
        }
      } catch (const error& e) {
        setup_error = e.what();
      }

      for (const auto& method : methods) {
        TrialRecord record;
        record.trial = trial;
        if (!setup_error.empty()) {
          record.error = "scenario: " + setup_error;
          cell.trials.at(method)[trial] = std::move(record);
          continue;
        }
        const auto start = std::chrono::steady_clock::now();
        try {
          int notified = 0;
          const Matching matching =
              run_method(method, instance, config, cell.threshold, trial_seed, &notified);
          record.metrics = score_matching(instance, matching, fs_l, fs_h, ac_b, teams_everywhere);
          record.notified_teams = notified;
          record.ok = true;
        } catch (const error& e) {
          record.error = e.what();
        }
        const auto stop = std::chrono::steady_clock::now();
        record.seconds = std::chrono::duration<double>(stop - start).count();
        cell.trials.at(method)[trial] = std::move(record);
      }
    });

    for (const auto& method : methods) {
      MethodSummary summary = summarize(cell.trials[method]);
      for (const auto& r : cell.trials[method]) summary.wall_clock_seconds += r.seconds;
      if (summary.failed * 2 > config.trials) {
        std::string first_error;
        for (const auto& r : cell.trials[method])
          if (!r.ok) {
            first_error = r.error;
            break;
          }
        throw error("method '" + method + "' failed on more than half the trials (" +
                    first_error + ")");
      }
      cell.summary[method] = summary;
    }
  }
  report.cells = std::move(cells);
  return report;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config, int jobs) {
  if (config.methods.empty()) throw validation_error("no methods requested");
  return run_cells(config, make_cells(config, false), config.methods, jobs);
}

ExperimentReport isolation_sweep(const ExperimentConfig& config, int jobs) {
  if (config.thresholds.empty())
    throw validation_error("isolation sweep needs a threshold grid");
  return run_cells(config, make_cells(config, true), {"fairea"}, jobs);
}

}  // namespace fairea
