#include "mdbench/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mdbench/errors.hpp"
#include "mdbench/game_file.hpp"

namespace mdbench {

Algorithm parse_algorithm(const std::string& name) {
  if (name == "cmd") return Algorithm::Cmd;
  if (name == "gmd") return Algorithm::Gmd;
  if (name == "gmd_ld") return Algorithm::GmdLinearDecay;
  if (name == "gmd_isr") return Algorithm::GmdInverseSqrt;
  if (name == "mmd_kl") return Algorithm::MmdKl;
  if (name == "mmd_eu") return Algorithm::MmdEu;
  if (name == "cfr") return Algorithm::Cfr;
  if (name == "cfr_plus" || name == "cfr+") return Algorithm::CfrPlus;
  throw ConfigError("unknown algorithm \"" + name +
                    "\"; use cmd, gmd, gmd_ld, gmd_isr, mmd_kl, mmd_eu, cfr, "
                    "or cfr_plus");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Cmd: return "cmd";
    case Algorithm::Gmd: return "gmd";
    case Algorithm::GmdLinearDecay: return "gmd_ld";
    case Algorithm::GmdInverseSqrt: return "gmd_isr";
    case Algorithm::MmdKl: return "mmd_kl";
    case Algorithm::MmdEu: return "mmd_eu";
    case Algorithm::Cfr: return "cfr";
    case Algorithm::CfrPlus: return "cfr_plus";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct PerGameDefaults {
  int history_len;
  double mu;
};

// Per-game (M, mu) defaults; every other default is global. The 2-player
// kuhn_poker run uses the same row as the 3-player game.
PerGameDefaults game_defaults(const std::string& name) {
  if (name == "kuhn_poker") return {5, 0.01};
  if (name == "leduc_poker") return {3, 0.05};
  if (name == "goofspiel") return {3, 0.01};
  if (name == "tiny_hanabi" || name == "tiny_hanabi_a") return {3, 0.05};
  if (name == "tiny_hanabi_b" || name == "tiny_hanabi_c") return {1, 0.05};
  if (name.rfind("single_agent_", 0) == 0) return {1, 0.05};
  if (name.rfind("mcc_", 0) == 0) return {1, 0.01};
  return {1, 0.05};
}

bool is_gmd_family(Algorithm a) {
  return a == Algorithm::Cmd || a == Algorithm::Gmd ||
         a == Algorithm::GmdLinearDecay || a == Algorithm::GmdInverseSqrt;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": \"" + value + "\" is not a number");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key " + key + ": \"" + value + "\" is not an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config key " + key + ": \"" + value + "\" is not a boolean");
}

// "1,2|3" with 1-based players.
TeamPartition parse_teams(const std::string& text) {
  TeamPartition teams;
  std::stringstream groups(text);
  std::string group;
  while (std::getline(groups, group, '|')) {
    std::vector<PlayerId> team;
    std::stringstream members(group);
    std::string member;
    while (std::getline(members, member, ',')) {
      member = trim(member);
      if (member.empty()) continue;
      team.push_back(static_cast<PlayerId>(parse_long("teams", member)) - 1);
    }
    if (!team.empty()) teams.push_back(team);
  }
  if (teams.empty()) throw ConfigError("empty team partition");
  return teams;
}

std::string teams_to_string(const TeamPartition& teams) {
  std::string out;
  for (size_t t = 0; t < teams.size(); ++t) {
    if (t) out += "|";
    for (size_t i = 0; i < teams[t].size(); ++i) {
      if (i) out += ",";
      out += std::to_string(teams[t][i] + 1);
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(line_no) +
                        " is not key = value: \"" + line + "\"");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) +
                                       " has an empty key");
    if (kv.count(key))
      throw ConfigError("config key \"" + key + "\" appears twice");
    kv[key] = value;
  }

  ExperimentConfig config;
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string value = it->second;
    kv.erase(it);
    return value;
  };

  // Game: the name plus any game.<param> keys.
  auto game_name = take("game");
  if (!game_name.has_value()) throw ConfigError("config needs a game key");
  config.game.name = *game_name;
  for (auto it = kv.begin(); it != kv.end();) {
    if (it->first.rfind("game.", 0) == 0) {
      config.game.params[it->first.substr(5)] = it->second;
      it = kv.erase(it);
    } else {
      ++it;
    }
  }

  if (auto v = take("algorithm")) config.algorithm = parse_algorithm(*v);
  if (auto v = take("measure")) config.measure = parse_measure(*v);
  if (auto v = take("measure.reference"))
    config.reference_value = parse_double("measure.reference", *v);
  if (auto v = take("measure.teams")) config.teams = parse_teams(*v);
  if (auto v = take("team_br_updates"))
    config.team_br_updates = static_cast<int>(parse_long("team_br_updates", *v));
  if (auto v = take("iterations")) config.iterations = parse_long("iterations", *v);
  if (auto v = take("eval_every"))
    config.eval_every = static_cast<int>(parse_long("eval_every", *v));
  if (auto v = take("seed"))
    config.seed = static_cast<std::uint64_t>(parse_long("seed", *v));
  if (auto v = take("record_timing")) config.record_timing = parse_bool("record_timing", *v);

  // GMD family. Per-game defaults fill M and mu unless set explicitly.
  const PerGameDefaults defaults = game_defaults(config.game.name);
  bool explicit_alpha = false;
  config.gmd.history_len = defaults.history_len;
  config.mc.mu = defaults.mu;
  if (auto v = take("gmd.family")) config.gmd.family = ConvexFamily::parse(*v);
  if (auto v = take("gmd.history"))
    config.gmd.history_len = static_cast<int>(parse_long("gmd.history", *v));
  if (auto v = take("gmd.epsilon")) config.gmd.epsilon = parse_double("gmd.epsilon", *v);
  if (auto v = take("gmd.iota")) config.gmd.iota = parse_double("gmd.iota", *v);
  if (auto v = take("gmd.newton_iters"))
    config.gmd.newton_iters = static_cast<int>(parse_long("gmd.newton_iters", *v));
  // The magnet is part of the controllable configuration under cmd and off
  // for the fixed-alpha schedules, where a fixed anchor would bias the fixed
  // point away from the optimum.
  config.gmd.magnet_enabled = config.algorithm == Algorithm::Cmd;
  if (auto v = take("gmd.magnet")) config.gmd.magnet_enabled = parse_bool("gmd.magnet", *v);
  if (auto v = take("gmd.alpha")) {
    std::vector<double> entries;
    std::stringstream ss(*v);
    std::string item;
    while (std::getline(ss, item, ','))
      entries.push_back(parse_double("gmd.alpha", trim(item)));
    config.gmd.alpha = Eigen::Map<Eigen::VectorXd>(entries.data(),
                                                   static_cast<Eigen::Index>(entries.size()));
    explicit_alpha = true;
  }
  if (!explicit_alpha)
    config.gmd.alpha = Eigen::VectorXd::Constant(config.gmd.history_len,
                                                 1.0 / config.gmd.history_len);
  config.gmd.alpha_magnet = 1.0 / config.gmd.history_len;
  if (auto v = take("gmd.alpha_magnet"))
    config.gmd.alpha_magnet = parse_double("gmd.alpha_magnet", *v);

  // Meta-controller keys are only meaningful under cmd.
  bool saw_mc_key = false;
  if (auto v = take("mc.kind")) { config.mc.kind = parse_mc_kind(*v); saw_mc_key = true; }
  if (auto v = take("mc.samples")) {
    config.mc.samples = static_cast<int>(parse_long("mc.samples", *v));
    saw_mc_key = true;
  }
  if (auto v = take("mc.interval")) {
    config.mc.interval = static_cast<int>(parse_long("mc.interval", *v));
    saw_mc_key = true;
  }
  if (auto v = take("mc.mu")) { config.mc.mu = parse_double("mc.mu", *v); saw_mc_key = true; }
  if (auto v = take("mc.r_low")) { config.mc.r_low = parse_double("mc.r_low", *v); saw_mc_key = true; }
  if (auto v = take("mc.r_high")) { config.mc.r_high = parse_double("mc.r_high", *v); saw_mc_key = true; }
  if (saw_mc_key && config.algorithm != Algorithm::Cmd)
    throw ConfigError("mc.* settings only apply to the cmd algorithm");
  config.mc.iota = config.gmd.iota;

  if (auto v = take("mmd.xi")) config.mmd.xi = parse_double("mmd.xi", *v);
  if (auto v = take("mmd.eta")) config.mmd.eta = parse_double("mmd.eta", *v);
  if (auto v = take("mmd.eta_tilde")) config.mmd.eta_tilde = parse_double("mmd.eta_tilde", *v);
  if (auto v = take("mmd.zeta")) config.mmd.zeta = parse_double("mmd.zeta", *v);

  if (!kv.empty())
    throw ConfigError("unknown config key \"" + kv.begin()->first + "\"");

  if (config.iterations < 1) throw ConfigError("iterations must be >= 1");
  if (config.eval_every < 1) throw ConfigError("eval_every must be >= 1");
  config.mc.validate();
  config.mmd.validate();
  return config;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file \"" + path + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_string(buffer.str());
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::map<std::string, std::string> out;
  out["game"] = game.to_string();
  out["algorithm"] = algorithm_name(algorithm);
  out["measure"] = measure_name(measure);
  if (reference_value) out["measure.reference"] = format_double(*reference_value);
  if (teams) out["measure.teams"] = teams_to_string(*teams);
  out["team_br_updates"] = std::to_string(team_br_updates);
  out["iterations"] = std::to_string(iterations);
  out["eval_every"] = std::to_string(eval_every);
  out["seed"] = std::to_string(seed);
  out["record_timing"] = record_timing ? "true" : "false";
  if (is_gmd_family(algorithm)) {
    out["gmd.family"] = gmd.family.to_string();
    out["gmd.history"] = std::to_string(gmd.history_len);
    out["gmd.magnet"] = gmd.magnet_enabled ? "true" : "false";
    out["gmd.epsilon"] = format_double(gmd.epsilon);
    out["gmd.iota"] = format_double(gmd.iota);
    out["gmd.newton_iters"] = std::to_string(gmd.newton_iters);
  }
  if (algorithm == Algorithm::Cmd) {
    out["mc.kind"] = mc_kind_name(mc.kind);
    out["mc.samples"] = std::to_string(mc.samples);
    out["mc.interval"] = std::to_string(mc.interval);
    out["mc.mu"] = format_double(mc.mu);
    out["mc.r_low"] = format_double(mc.r_low);
    out["mc.r_high"] = format_double(mc.r_high);
  }
  if (algorithm == Algorithm::MmdKl || algorithm == Algorithm::MmdEu ||
      (teams && measure == MeasureKind::NashConv)) {
    out["mmd.xi"] = format_double(mmd.xi);
    out["mmd.eta"] = format_double(mmd.eta);
    out["mmd.eta_tilde"] = format_double(mmd.eta_tilde);
    out["mmd.zeta"] = format_double(mmd.zeta);
  }
  return out;
}

ResolvedGame resolve_game(const ExperimentConfig& config) {
  std::optional<GameTree> tree;
  std::optional<TeamPartition> game_teams;
  if (config.game.name.rfind("file:", 0) == 0) {
    tree = load_game_file(config.game.name.substr(5));
  } else {
    BuiltGame built = make_builtin(config.game);
    game_teams = built.teams;
    tree = std::move(built.tree);
  }

  Measure measure;
  measure.kind = config.measure;
  measure.team_br_updates = config.team_br_updates;
  measure.team_br_config = config.mmd;
  if (config.teams) {
    validate_partition(*config.teams, tree->player_count());
    measure.teams = config.teams;
  } else if (game_teams && config.measure == MeasureKind::NashConv) {
    measure.teams = game_teams;
  }
  if (measure.teams) {
    // Singleton-only partitions reduce to the plain measure.
    bool has_multi = false;
    for (const auto& t : *measure.teams) has_multi |= t.size() > 1;
    if (!has_multi) measure.teams.reset();
  }
  if (config.measure == MeasureKind::OptGap) {
    measure.reference_value = config.reference_value.has_value()
                                  ? *config.reference_value
                                  : exhaustive_optimal_value(*tree);
  }
  measure.validate();
  return ResolvedGame{std::move(*tree), game_teams, std::move(measure)};
}

namespace {

struct RecordSink {
  const ExperimentConfig& config;
  const Measure& measure;
  const GameTree& tree;
  std::vector<IterationRecord>& records;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void maybe_record(long k, const JointPolicy& joint, const Eigen::VectorXd& alpha) {
    if (k % config.eval_every != 0 && k != config.iterations) return;
    IterationRecord record;
    record.iteration = k;
    record.measure_name = measure_name(measure.kind);
    record.measure_value = measure.value(tree, joint);
    record.alpha = alpha;
    if (config.record_timing) {
      record.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
    }
    records.push_back(std::move(record));
  }
};

// Scheduled alpha for the fixed-weight GMD variants at iteration k.
Eigen::VectorXd scheduled_alpha(Algorithm algorithm, const GmdConfig& gmd, long k,
                                long total_iterations) {
  const int m = gmd.history_len;
  if (k <= m) return Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(k));
  switch (algorithm) {
    case Algorithm::Gmd:
      return gmd.alpha;
    case Algorithm::GmdLinearDecay: {
      const double frac = static_cast<double>(k - 1) / static_cast<double>(total_iterations);
      const double value = clip_unit((1.0 - frac) / m, gmd.iota);
      return Eigen::VectorXd::Constant(m, value);
    }
    case Algorithm::GmdInverseSqrt: {
      const double value = clip_unit(1.0 / std::sqrt(static_cast<double>(k)), gmd.iota);
      return Eigen::VectorXd::Constant(m, value);
    }
    default:
      return gmd.alpha;
  }
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
  ResolvedGame resolved = resolve_game(config);
  const GameTree& tree = resolved.tree;
  const Measure& measure = resolved.measure;

  RunResult result{config, {}, JointPolicy::uniform(tree), 0.0, 0};
  const auto t0 = std::chrono::steady_clock::now();
  RecordSink sink{config, measure, tree, result.records};

  switch (config.algorithm) {
    case Algorithm::Cmd: {
      GmdConfig gmd = config.gmd;
      gmd.validate(tree.max_actions());
      Rng rng(config.seed);
      JointPolicy joint = JointPolicy::uniform(tree);
      GmdState state = GmdState::init(tree, joint, gmd.history_len);
      auto loss = [&](const JointPolicy& candidate) {
        return measure.loss(tree, candidate);
      };
      for (long k = 1; k <= config.iterations; ++k) {
        joint = cmd_iteration(tree, joint, state, gmd, config.mc, loss, k, rng);
        sink.maybe_record(k, joint, gmd.packed_alpha());
      }
      result.final_joint = std::move(joint);
      result.alpha_dim = gmd.packed_dim();
      break;
    }
    case Algorithm::Gmd:
    case Algorithm::GmdLinearDecay:
    case Algorithm::GmdInverseSqrt: {
      GmdConfig gmd = config.gmd;
      gmd.validate(tree.max_actions());
      JointPolicy joint = JointPolicy::uniform(tree);
      GmdState state = GmdState::init(tree, joint, gmd.history_len);
      for (long k = 1; k <= config.iterations; ++k) {
        Eigen::VectorXd alpha =
            scheduled_alpha(config.algorithm, config.gmd, k, config.iterations);
        gmd.alpha = alpha;
        if (gmd.magnet_enabled) gmd.alpha_magnet = alpha[0];
        joint = gmd_update(tree, joint, state, gmd);
        sink.maybe_record(k, joint, gmd.packed_alpha());
      }
      result.final_joint = std::move(joint);
      result.alpha_dim = gmd.packed_dim();
      break;
    }
    case Algorithm::MmdKl:
    case Algorithm::MmdEu: {
      const MmdVariant variant =
          config.algorithm == Algorithm::MmdKl ? MmdVariant::Kl : MmdVariant::Eu;
      MmdState state = MmdState::init(tree);
      for (long k = 1; k <= config.iterations; ++k) {
        mmd_update(tree, state, variant, config.mmd);
        sink.maybe_record(k, state.joint, Eigen::VectorXd());
      }
      result.final_joint = state.joint;
      break;
    }
    case Algorithm::Cfr:
    case Algorithm::CfrPlus: {
      RegretState state = RegretState::init(tree);
      const bool plus = config.algorithm == Algorithm::CfrPlus;
      JointPolicy average = JointPolicy::uniform(tree);
      for (long k = 1; k <= config.iterations; ++k) {
        CfrPolicies policies = cfr_iteration(tree, state, plus);
        average = std::move(policies.average);
        sink.maybe_record(k, average, Eigen::VectorXd());
      }
      result.final_joint = std::move(average);
      break;
    }
  }

  result.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::string records_to_csv(const std::vector<IterationRecord>& records,
                           int alpha_dim) {
  std::string out = "iteration,measure,value,wall_seconds";
  for (int i = 0; i < alpha_dim; ++i) out += ",alpha_" + std::to_string(i);
  out += "\n";
  for (const IterationRecord& r : records) {
    out += std::to_string(r.iteration);
    out += ",";
    out += r.measure_name;
    out += ",";
    out += format_double(r.measure_value);
    out += ",";
    out += format_double(r.wall_seconds);
    for (int i = 0; i < alpha_dim; ++i) {
      out += ",";
      out += format_double(i < r.alpha.size() ? r.alpha[i] : 0.0);
    }
    out += "\n";
  }
  return out;
}

std::vector<IterationRecord> records_from_csv(const std::string& csv) {
  std::vector<IterationRecord> records;
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV");
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::stringstream ss(line);
    std::string field;
    IterationRecord r;
    std::getline(ss, field, ',');
    r.iteration = parse_long("csv iteration", field);
    std::getline(ss, r.measure_name, ',');
    std::getline(ss, field, ',');
    r.measure_value = parse_double("csv value", field);
    std::getline(ss, field, ',');
    r.wall_seconds = parse_double("csv wall_seconds", field);
    std::vector<double> alpha;
    while (std::getline(ss, field, ','))
      alpha.push_back(parse_double("csv alpha", field));
    r.alpha = Eigen::Map<Eigen::VectorXd>(alpha.data(),
                                          static_cast<Eigen::Index>(alpha.size()));
    records.push_back(std::move(r));
  }
  return records;
}

std::string summary_json(const RunResult& result) {
  nlohmann::json j;
  j["config"] = result.config.echo();
  j["iterations_run"] = result.config.iterations;
  j["total_seconds"] = result.total_seconds;
  j["records"] = result.records.size();
  if (!result.records.empty()) {
    const IterationRecord& last = result.records.back();
    j["final"] = {{"iteration", last.iteration},
                  {"measure", last.measure_name},
                  {"value", last.measure_value}};
  }
  return j.dump(2) + "\n";
}

std::string output_stem(const ExperimentConfig& config) {
  std::string game = config.game.to_string();
  for (char& c : game)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '-';
  return game + "_" + algorithm_name(config.algorithm) + "_" +
         measure_name(config.measure) + "_seed" + std::to_string(config.seed);
}

std::vector<std::string> list_games() { return builtin_names(); }

std::string describe_game(const std::string& name) {
  GameSpec spec;
  spec.name = name;
  BuiltGame built = make_builtin(spec);
  DecisionPointCounts counts = count_decision_points(built.tree);
  std::ostringstream out;
  out << name << ": " << built.summary << "\n";
  out << "  players: " << built.tree.player_count() << "\n";
  out << "  decision points: " << counts.total;
  out << " (";
  for (size_t p = 0; p < counts.per_player.size(); ++p) {
    if (p) out << ", ";
    out << "player " << p + 1 << ": " << counts.per_player[p];
  }
  out << ")\n";
  if (built.teams) out << "  teams: " << teams_to_string(*built.teams) << "\n";
  return out.str();
}

JointPolicy load_policy_json(const std::string& path, const GameTree& tree) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open policy file \"" + path + "\"");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("policy file \"" + path + "\" is not valid JSON: " + e.what());
  }
  if (!j.contains("players") || !j["players"].is_array())
    throw ConfigError("policy file needs a \"players\" array");
  const auto& players = j["players"];
  if (static_cast<int>(players.size()) != tree.player_count())
    throw ConfigError("policy file has " + std::to_string(players.size()) +
                      " players, the game has " +
                      std::to_string(tree.player_count()));
  JointPolicy joint(tree.player_count());
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    if (!players[p].is_object())
      throw ConfigError("policy file player entries must map infostates to arrays");
    for (const auto& [key, probs] : players[p].items()) {
      if (!probs.is_array())
        throw ConfigError("policy entry \"" + key + "\" must be an array");
      Eigen::VectorXd v(static_cast<Eigen::Index>(probs.size()));
      for (size_t i = 0; i < probs.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = probs[i].get<double>();
      joint.set(p, key, std::move(v));
    }
  }
  joint.validate_against(tree);
  return joint;
}

std::string policy_to_json(const JointPolicy& joint) {
  nlohmann::json players = nlohmann::json::array();
  for (PlayerId p = 0; p < joint.player_count(); ++p) {
    nlohmann::json table = nlohmann::json::object();
    for (const auto& [key, probs] : joint.table(p)) {
      nlohmann::json arr = nlohmann::json::array();
      for (Eigen::Index i = 0; i < probs.size(); ++i) arr.push_back(probs[i]);
      table[key] = arr;
    }
    players.push_back(table);
  }
  nlohmann::json j;
  j["players"] = players;
  return j.dump(2) + "\n";
}

}  // namespace mdbench
