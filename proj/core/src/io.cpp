#include "fairea/io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fairea {

namespace {

std::string location(const std::string& file, std::size_t line) {
  return file + ":" + std::to_string(line) + ": ";
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open '" + path + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.push_back("");
  return fields;
}

void check_id(const std::string& id, const std::string& file, std::size_t line) {
  if (id.empty()) throw validation_error(location(file, line) + "empty id");
  if (id.find_first_of(",\t\n") != std::string::npos)
    throw validation_error(location(file, line) + "id '" + id +
                           "' contains a separator character");
}

void check_writable_id(const std::string& id) {
  if (id.empty() || id.find_first_of(",\t\n") != std::string::npos)
    throw validation_error("id '" + id + "' cannot be written to CSV/TSV output");
}

int parse_int(const std::string& text, const std::string& file, std::size_t line,
              const std::string& what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw validation_error(location(file, line) + "bad " + what + " '" + text + "'");
  return value;
}

double parse_double(const std::string& text, const std::string& file, std::size_t line,
                    const std::string& what) {
  try {
    std::size_t consumed = 0;
    const double value = std::stod(text, &consumed);
    if (consumed != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw validation_error(location(file, line) + "bad " + what + " '" + text + "'");
  }
}

std::ofstream open_out(const std::string& path) {
  if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
    std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);  // '\n' line endings on every platform
  if (!out) throw validation_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw error("double formatting failed");
  return std::string(buffer, ptr);
}

AttributedGraph read_graph(const std::string& edges_file, const std::string& nodes_file) {
  const auto node_lines = read_lines(nodes_file);
  if (node_lines.empty()) throw validation_error(nodes_file + ":1: missing header");
  const auto header = split(node_lines[0], ',');
  if (header.size() < 3 || header[0] != "node_id" || header[1] != "class" ||
      header[2] != "status")
    throw validation_error(nodes_file + ":1: header must start with node_id,class,status");
  int team_column = -1, level_column = -1;
  for (std::size_t i = 3; i < header.size(); ++i) {
    if (header[i] == "team" && team_column < 0)
      team_column = static_cast<int>(i);
    else if (header[i] == "level" && level_column < 0)
      level_column = static_cast<int>(i);
    else
      throw validation_error(nodes_file + ":1: unknown column '" + header[i] + "'");
  }

  struct Row {
    NodeRecord record;
    std::size_t line;
  };
  std::vector<Row> rows;
  int max_class = -1;
  for (std::size_t i = 1; i < node_lines.size(); ++i) {
    if (node_lines[i].empty()) continue;
    const std::size_t line = i + 1;
    const auto fields = split(node_lines[i], ',');
    if (fields.size() != header.size())
      throw validation_error(location(nodes_file, line) + "expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
    NodeRecord record;
    check_id(fields[0], nodes_file, line);
    record.id = fields[0];
    if (fields[2] == "filled")
      record.status = NodeStatus::filled;
    else if (fields[2] == "open")
      record.status = NodeStatus::open;
    else
      throw validation_error(location(nodes_file, line) + "bad status '" + fields[2] + "'");
    if (fields[1].empty()) {
      if (record.status == NodeStatus::filled)
        throw validation_error(location(nodes_file, line) + "filled node '" + record.id +
                               "' has empty class");
      record.class_index = AttributedGraph::kUnassigned;
    } else {
      record.class_index = parse_int(fields[1], nodes_file, line, "class");
      if (record.class_index < 0)
        throw validation_error(location(nodes_file, line) + "negative class");
      max_class = std::max(max_class, record.class_index);
    }
    if (team_column >= 0) record.team = fields[team_column];
    if (level_column >= 0) record.level = fields[level_column];
    rows.push_back({std::move(record), line});
  }

  AttributedGraph graph(std::max(max_class + 1, 1));
  for (auto& row : rows) {
    try {
      graph.add_node(std::move(row.record));
    } catch (const validation_error& e) {
      throw validation_error(location(nodes_file, row.line) + e.what());
    }
  }

  const auto edge_lines = read_lines(edges_file);
  for (std::size_t i = 0; i < edge_lines.size(); ++i) {
    if (edge_lines[i].empty()) continue;
    const std::size_t line = i + 1;
    const auto fields = split(edge_lines[i], '\t');
    if (fields.size() != 2)
      throw validation_error(location(edges_file, line) + "expected `u<TAB>v`");
    try {
      graph.add_edge(fields[0], fields[1]);
    } catch (const validation_error& e) {
      throw validation_error(location(edges_file, line) + e.what());
    }
  }
  return graph;
}

void write_graph(const AttributedGraph& graph, const std::string& edges_file,
                 const std::string& nodes_file) {
  for (const auto& node : graph.nodes()) {
    check_writable_id(node.id);
    if (!node.team.empty()) check_writable_id(node.team);
    if (!node.level.empty()) check_writable_id(node.level);
  }
  const bool teams = graph.any_team();
  const bool levels = graph.any_level();

  auto nodes_out = open_out(nodes_file);
  nodes_out << "node_id,class,status";
  if (teams) nodes_out << ",team";
  if (levels) nodes_out << ",level";
  nodes_out << "\n";
  for (const auto& node : graph.nodes()) {
    nodes_out << node.id << ',';
    if (node.class_index >= 0) nodes_out << node.class_index;
    nodes_out << ',' << (node.status == NodeStatus::filled ? "filled" : "open");
    if (teams) nodes_out << ',' << node.team;
    if (levels) nodes_out << ',' << node.level;
    nodes_out << "\n";
  }

  auto edges_out = open_out(edges_file);
  for (const auto& [u, v] : graph.edges())
    edges_out << graph.node(u).id << '\t' << graph.node(v).id << "\n";
}

AssignmentInstance ingest(const FileBundle& bundle) {
  AttributedGraph graph = read_graph(bundle.edges_file, bundle.nodes_file);

  const auto cand_lines = read_lines(bundle.candidates_file);
  if (cand_lines.empty()) throw validation_error(bundle.candidates_file + ":1: missing header");
  const auto cand_header = split(cand_lines[0], ',');
  const bool has_origin = cand_header.size() == 3 && cand_header[2] == "origin_node";
  if (cand_header.size() < 2 || cand_header[0] != "candidate_id" || cand_header[1] != "class" ||
      (cand_header.size() == 3 && !has_origin) || cand_header.size() > 3)
    throw validation_error(bundle.candidates_file +
                           ":1: header must be candidate_id,class[,origin_node]");

  std::vector<Candidate> candidates;
  int max_class = graph.class_count() - 1;
  for (std::size_t i = 1; i < cand_lines.size(); ++i) {
    if (cand_lines[i].empty()) continue;
    const std::size_t line = i + 1;
    const auto fields = split(cand_lines[i], ',');
    if (fields.size() != cand_header.size())
      throw validation_error(location(bundle.candidates_file, line) + "expected " +
                             std::to_string(cand_header.size()) + " fields");
    Candidate cand;
    check_id(fields[0], bundle.candidates_file, line);
    cand.id = fields[0];
    cand.class_index = parse_int(fields[1], bundle.candidates_file, line, "class");
    if (cand.class_index < 0)
      throw validation_error(location(bundle.candidates_file, line) + "negative class");
    max_class = std::max(max_class, cand.class_index);
    if (has_origin && !fields[2].empty()) {
      cand.origin_node = fields[2];
      if (!graph.has_node(cand.origin_node))
        throw validation_error(location(bundle.candidates_file, line) + "unknown origin node '" +
                               cand.origin_node + "'");
    }
    candidates.push_back(std::move(cand));
  }

  graph.set_class_count(max_class + 1);
  AssignmentInstance instance(std::move(graph), std::move(candidates));

  const auto fit_lines = read_lines(bundle.fitness_file);
  if (fit_lines.empty()) throw validation_error(bundle.fitness_file + ":1: missing header");
  if (split(fit_lines[0], ',') !=
      std::vector<std::string>{"open_position_id", "candidate_id", "weight"})
    throw validation_error(bundle.fitness_file +
                           ":1: header must be open_position_id,candidate_id,weight");
  std::vector<std::string> problems;
  for (std::size_t i = 1; i < fit_lines.size(); ++i) {
    if (fit_lines[i].empty()) continue;
    const std::size_t line = i + 1;
    const auto fields = split(fit_lines[i], ',');
    if (fields.size() != 3)
      throw validation_error(location(bundle.fitness_file, line) + "expected 3 fields");
    const double weight = parse_double(fields[2], bundle.fitness_file, line, "weight");
    const auto& pos = fields[0];
    const auto& cand = fields[1];
    if (!instance.graph().has_node(pos))
      problems.push_back(location(bundle.fitness_file, line) + "unknown open position id '" +
                         pos + "'");
    else if (instance.graph().node(pos).status != NodeStatus::open)
      problems.push_back(location(bundle.fitness_file, line) + "position '" + pos +
                         "' is not open");
    if (!instance.find_candidate(cand))
      problems.push_back(location(bundle.fitness_file, line) + "unknown candidate id '" + cand +
                         "'");
    if (!(weight > 0.0) || weight > 1.0)
      problems.push_back(location(bundle.fitness_file, line) + "weight outside (0, 1]");
    try {
      instance.set_fitness_unchecked(pos, cand, weight);
    } catch (const validation_error& e) {
      problems.push_back(location(bundle.fitness_file, line) + e.what());
    }
  }
  if (!problems.empty()) {
    std::string message;
    for (const auto& p : problems) {
      if (!message.empty()) message += "\n";
      message += p;
    }
    throw validation_error(message);
  }

  const auto violations = validate_instance(instance);
  if (!violations.empty()) {
    std::string message = "invalid instance:";
    for (const auto& v : violations) message += "\n  " + v;
    throw validation_error(message);
  }
  if (!feasibility_check(instance))
    throw infeasible_error("no complete matching covers all open positions",
                           instance.open_position_ids());
  return instance;
}

void write_candidates(const AssignmentInstance& instance, const std::string& path) {
  bool origins = false;
  for (const auto& c : instance.candidates()) {
    check_writable_id(c.id);
    if (!c.origin_node.empty()) origins = true;
  }
  auto out = open_out(path);
  out << (origins ? "candidate_id,class,origin_node" : "candidate_id,class") << "\n";
  for (const auto& c : instance.candidates()) {
    out << c.id << ',' << c.class_index;
    if (origins) out << ',' << c.origin_node;
    out << "\n";
  }
}

void write_fitness(const AssignmentInstance& instance, const std::string& path) {
  auto out = open_out(path);
  out << "open_position_id,candidate_id,weight\n";
  for (const auto& [pos, cand, w] : instance.qualified_pairs()) {
    check_writable_id(pos);
    check_writable_id(cand);
    out << pos << ',' << cand << ',' << format_double(w) << "\n";
  }
}

void write_matching(const Matching& matching, const std::string& path) {
  auto out = open_out(path);
  out << "open_position_id,candidate_id\n";
  for (const auto& [pos, cand] : matching.pairs()) {
    check_writable_id(pos);
    check_writable_id(cand);
    out << pos << ',' << cand << "\n";
  }
}

std::vector<std::pair<std::string, std::string>> read_key_values(const std::string& path) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t");
    line = line.substr(first, last - first + 1);
    const auto space = line.find_first_of(" \t");
    if (space == std::string::npos)
      throw validation_error(location(path, i + 1) + "expected `key value`");
    const std::string key = line.substr(0, space);
    const auto value_start = line.find_first_not_of(" \t", space);
    out.emplace_back(key, line.substr(value_start));
  }
  return out;
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  auto items = split(text, ',');
  for (auto& item : items) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) throw validation_error("empty list item in '" + text + "'");
    const auto last = item.find_last_not_of(" \t");
    item = item.substr(first, last - first + 1);
  }
  return items;
}

std::uint64_t parse_seed(const std::string& text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw validation_error("bad seed '" + text + "'");
  return value;
}

}  // namespace

ExperimentConfig read_experiment_config(const std::string& path) {
  ExperimentConfig config;
  for (const auto& [key, value] : read_key_values(path)) {
    try {
      if (key == "network.model") {
        if (value == "sf")
          config.network.kind = NetworkSource::Kind::scale_free;
        else if (value == "fo")
          config.network.kind = NetworkSource::Kind::functional_org;
        else if (value == "do")
          config.network.kind = NetworkSource::Kind::divisional_org;
        else if (value == "files")
          config.network.kind = NetworkSource::Kind::files;
        else
          throw validation_error("unknown network model '" + value + "'");
      } else if (key == "network.nodes") {
        config.network.nodes = std::stoi(value);
      } else if (key == "network.edges-per-node") {
        config.network.edges_per_node = std::stoi(value);
      } else if (key == "network.minority") {
        config.network.minority_fraction = std::stod(value);
      } else if (key == "network.target-assort") {
        config.network.target_assortativity = std::stod(value);
      } else if (key == "network.assort-tolerance") {
        config.network.plant_tolerance = std::stod(value);
      } else if (key == "network.seed") {
        config.network.seed = parse_seed(value);
      } else if (key == "network.edges-file") {
        config.network.edges_file = value;
      } else if (key == "network.nodes-file") {
        config.network.nodes_file = value;
      } else if (key == "scenario.open-fractions") {
        config.open_fractions.clear();
        for (const auto& item : split_list(value)) config.open_fractions.push_back(std::stod(item));
      } else if (key == "scenario.pool-modes") {
        config.pool_modes.clear();
        for (const auto& item : split_list(value))
          config.pool_modes.push_back(pool_mode_from_string(item));
      } else if (key == "scenario.fitness-modes") {
        config.fitness_modes.clear();
        for (const auto& item : split_list(value))
          config.fitness_modes.push_back(fitness_mode_from_string(item));
      } else if (key == "scenario.qualified-per-candidate") {
        config.qualified_per_candidate = std::stoi(value);
      } else if (key == "methods") {
        config.methods = split_list(value);
      } else if (key == "trials") {
        config.trials = std::stoi(value);
      } else if (key == "thresholds") {
        config.thresholds.clear();
        for (const auto& item : split_list(value))
          config.thresholds.push_back(ThresholdSpec::parse(item));
      } else if (key == "oracle-lambda") {
        config.oracle_lambda = std::stod(value);
      } else if (key == "master-seed") {
        config.master_seed = parse_seed(value);
      } else {
        throw validation_error("unknown config key '" + key + "'");
      }
    } catch (const validation_error&) {
      throw;
    } catch (const std::exception&) {
      throw validation_error("bad value '" + value + "' for config key '" + key + "'");
    }
  }
  return config;
}

namespace {

std::string network_model_name(NetworkSource::Kind kind) {
  switch (kind) {
    case NetworkSource::Kind::scale_free: return "sf";
    case NetworkSource::Kind::functional_org: return "fo";
    case NetworkSource::Kind::divisional_org: return "do";
    case NetworkSource::Kind::files: return "files";
  }
  return "?";
}

std::string csv_safe(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ",";
    out += item;
  }
  return out;
}

}  // namespace

void write_report(const ExperimentReport& report, const std::string& directory) {
  std::filesystem::create_directories(directory);
  const auto& config = report.config;

  auto out = open_out((std::filesystem::path(directory) / "report.txt").string());
  out << "# experiment report\n";
  out << "network.model " << network_model_name(config.network.kind) << "\n";
  out << "network.nodes " << report.network_nodes << "\n";
  out << "network.edges " << report.network_edges << "\n";
  if (report.network_assortativity)
    out << "network.assortativity " << format_double(*report.network_assortativity) << "\n";
  out << "config.trials " << config.trials << "\n";
  out << "config.master-seed " << config.master_seed << "\n";
  out << "config.qualified-per-candidate " << config.qualified_per_candidate << "\n";
  out << "config.methods " << join(config.methods) << "\n";

  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    const auto& cell = report.cells[i];
    const std::string prefix = "cell." + std::to_string(i) + ".";
    out << prefix << "open-fraction " << format_double(cell.open_fraction) << "\n";
    out << prefix << "pool " << to_string(cell.pool_mode) << "\n";
    out << prefix << "fitness " << to_string(cell.fitness_mode) << "\n";
    if (cell.threshold) out << prefix << "threshold " << cell.threshold->to_string() << "\n";
    for (const auto& [method, summary] : cell.summary) {
      const std::string mp = prefix + method + ".";
      out << mp << "trials-ok " << summary.ok << "\n";
      out << mp << "trials-failed " << summary.failed << "\n";
      out << mp << "pia-not-applicable " << summary.pia_not_applicable << "\n";
      out << mp << "pif-mean " << format_double(summary.pif_mean) << "\n";
      out << mp << "pif-std " << format_double(summary.pif_std) << "\n";
      out << mp << "pia-mean " << format_double(summary.pia_mean) << "\n";
      out << mp << "pia-std " << format_double(summary.pia_std) << "\n";
      if (summary.ac_after_mean)
        out << mp << "ac-after-mean " << format_double(*summary.ac_after_mean) << "\n";
      if (summary.isolation_mean)
        out << mp << "isolation-mean " << format_double(*summary.isolation_mean) << "\n";
      out << mp << "notified-teams-mean " << format_double(summary.notified_teams_mean) << "\n";
    }
  }

  auto csv = open_out((std::filesystem::path(directory) / "trials.csv").string());
  csv << "cell,open_fraction,pool,fitness,threshold,method,trial,ok,fs_a,pif,ac_b,ac_a,pia,"
         "isolation,notified_teams,error\n";
  for (std::size_t i = 0; i < report.cells.size(); ++i) {
    const auto& cell = report.cells[i];
    for (const auto& [method, records] : cell.trials) {
      for (const auto& r : records) {
        csv << i << ',' << format_double(cell.open_fraction) << ',' << to_string(cell.pool_mode)
            << ',' << to_string(cell.fitness_mode) << ','
            << (cell.threshold ? cell.threshold->to_string() : "") << ',' << method << ','
            << r.trial << ',' << (r.ok ? 1 : 0) << ',';
        if (r.ok) {
          csv << format_double(r.metrics.fit_score) << ',' << format_double(r.metrics.pif) << ',';
          csv << (r.metrics.ac_before ? format_double(*r.metrics.ac_before) : "") << ',';
          csv << (r.metrics.ac_after ? format_double(*r.metrics.ac_after) : "") << ',';
          csv << (r.metrics.pia ? format_double(*r.metrics.pia) : "") << ',';
          csv << (r.metrics.isolation ? format_double(*r.metrics.isolation) : "") << ',';
          csv << r.notified_teams << ',';
        } else {
          csv << ",,,,,," << ',';
        }
        csv << csv_safe(r.error) << "\n";
      }
    }
  }
}

}  // namespace fairea
