#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdbench/cfr.hpp"
#include "mdbench/games.hpp"
#include "mdbench/gmd.hpp"
#include "mdbench/measures.hpp"
#include "mdbench/meta_controller.hpp"
#include "mdbench/mmd.hpp"

namespace mdbench {

enum class Algorithm {
  Cmd,
  Gmd,
  GmdLinearDecay,   // alpha decays linearly over the run
  GmdInverseSqrt,   // alpha = 1/sqrt(k)
  MmdKl,
  MmdEu,
  Cfr,
  CfrPlus,
};

Algorithm parse_algorithm(const std::string& name);
std::string algorithm_name(Algorithm a);

struct ExperimentConfig {
  GameSpec game;
  Algorithm algorithm = Algorithm::Cmd;
  MeasureKind measure = MeasureKind::NashConv;
  std::optional<double> reference_value;     // optgap
  std::optional<TeamPartition> teams;        // team-deviation nashconv
  int team_br_updates = 100;
  long iterations = 100000;
  int eval_every = 10;
  std::uint64_t seed = 0;
  // Off by default so identical seeds give byte-identical CSVs; real timing
  // always lands in the JSON summary.
  bool record_timing = false;

  GmdConfig gmd;
  McConfig mc;
  MmdConfig mmd;

  // Parses the key = value format documented in the README. Unspecified
  // fields fall back to the per-game defaults.
  static ExperimentConfig from_string(const std::string& text);
  static ExperimentConfig from_file(const std::string& path);

  // Ordered echo of every resolved setting.
  std::map<std::string, std::string> echo() const;
};

struct IterationRecord {
  long iteration = 0;
  std::string measure_name;
  double measure_value = 0.0;
  Eigen::VectorXd alpha;  // empty for algorithms without alpha
  double wall_seconds = 0.0;
};

struct RunResult {
  ExperimentConfig config;  // fully resolved
  std::vector<IterationRecord> records;
  JointPolicy final_joint;
  double total_seconds = 0.0;
  int alpha_dim = 0;
};

RunResult run(const ExperimentConfig& config);

std::string records_to_csv(const std::vector<IterationRecord>& records,
                           int alpha_dim);
std::vector<IterationRecord> records_from_csv(const std::string& csv);
std::string summary_json(const RunResult& result);

// Sanitized "<game>_<algorithm>_<measure>_seed<seed>" stem for output files.
std::string output_stem(const ExperimentConfig& config);

std::vector<std::string> list_games();
std::string describe_game(const std::string& name);

// Builds the game named by the config ("file:<path>" loads a game file) and
// resolves the measure, including the exhaustive optgap reference and the
// implied team partition of the team-reward games.
struct ResolvedGame {
  GameTree tree;
  std::optional<TeamPartition> teams;
  Measure measure;
};
ResolvedGame resolve_game(const ExperimentConfig& config);

// JSON policy file: {"players": [{"<infostate>": [p, ...], ...}, ...]}.
JointPolicy load_policy_json(const std::string& path, const GameTree& tree);
std::string policy_to_json(const JointPolicy& joint);

}  // namespace mdbench
