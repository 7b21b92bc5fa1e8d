#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fairea/harness.hpp"
#include "fairea/instance.hpp"

namespace fairea {

// File formats (flat text so diffing and external tooling stay trivial):
//   edges      tab-separated `u<TAB>v` lines, no header
//   nodes      CSV `node_id,class,status[,team][,level]`, status filled|open,
//              empty class allowed only for open rows
//   candidates CSV `candidate_id,class[,origin_node]`
//   fitness    CSV `open_position_id,candidate_id,weight`, weight in (0,1]
//   config     `key value` lines, '#' comments (schema in the README)
// Ids must not contain commas, tabs, or newlines.

struct FileBundle {
  std::string edges_file;
  std::string nodes_file;
  std::string candidates_file;
  std::string fitness_file;
};

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double value);

AttributedGraph read_graph(const std::string& edges_file, const std::string& nodes_file);
void write_graph(const AttributedGraph& graph, const std::string& edges_file,
                 const std::string& nodes_file);

// Parses and validates the bundle: parse errors carry file and line
// numbers, validation failures are enumerated, and the instance must
// admit a complete matching.
AssignmentInstance ingest(const FileBundle& bundle);

void write_candidates(const AssignmentInstance& instance, const std::string& path);
void write_fitness(const AssignmentInstance& instance, const std::string& path);
void write_matching(const Matching& matching, const std::string& path);

// `key value` pairs in file order, comments and blank lines skipped.
std::vector<std::pair<std::string, std::string>> read_key_values(const std::string& path);

ExperimentConfig read_experiment_config(const std::string& path);

// report.txt (aggregate key-value block) and trials.csv (flat per-trial
// table). Timing is deliberately not written: outputs are byte-identical
// across reruns with the same config and seed.
void write_report(const ExperimentReport& report, const std::string& directory);

}  // namespace fairea
