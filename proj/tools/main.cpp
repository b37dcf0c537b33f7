#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mdbench/errors.hpp"
#include "mdbench/harness.hpp"

namespace {

int run_command(const std::string& config_path, long seed_override,
                bool have_seed, const std::string& out_dir, bool save_policy) {
  using namespace mdbench;
  ExperimentConfig config = ExperimentConfig::from_file(config_path);
  if (have_seed) config.seed = static_cast<std::uint64_t>(seed_override);

  std::filesystem::create_directories(out_dir);
  RunResult result = run(config);

  const std::string stem = (std::filesystem::path(out_dir) / output_stem(config)).string();
  {
    std::ofstream csv(stem + ".csv", std::ios::binary);
    csv << records_to_csv(result.records, result.alpha_dim);
  }
  {
    std::ofstream json(stem + ".json", std::ios::binary);
    json << summary_json(result);
  }
  if (save_policy) {
    std::ofstream policy(stem + "_policy.json", std::ios::binary);
    policy << policy_to_json(result.final_joint);
  }

  for (const auto& [key, value] : config.echo())
    std::cout << key << " = " << value << "\n";
  if (!result.records.empty()) {
    const IterationRecord& last = result.records.back();
    std::cout << "final " << last.measure_name << " = " << last.measure_value
              << " (iteration " << last.iteration << ")\n";
  }
  std::cout << "wrote " << stem << ".csv and " << stem << ".json\n";
  if (save_policy) std::cout << "wrote " << stem << "_policy.json\n";
  return 0;
}

int eval_command(const std::string& game, const std::string& policy_path,
                 const std::string& measure, double reference, bool have_reference,
                 const std::string& teams, int team_br_updates) {
  using namespace mdbench;
  ExperimentConfig config;
  if (game.rfind("file:", 0) == 0) {
    config.game.name = game;
  } else {
    config.game = GameSpec::parse(game);
  }
  config.measure = parse_measure(measure);
  if (have_reference) config.reference_value = reference;
  if (!teams.empty()) {
    std::string text = "game = x\nmeasure.teams = " + teams + "\n";
    config.teams = ExperimentConfig::from_string(text).teams;
  }
  config.team_br_updates = team_br_updates;

  ResolvedGame resolved = resolve_game(config);
  JointPolicy joint = load_policy_json(policy_path, resolved.tree);
  std::cout << measure_name(resolved.measure.kind) << " = "
            << resolved.measure.value(resolved.tree, joint) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tabular decision-making solvers and benchmark games"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  long seed = 0;
  bool save_policy = false;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment from a config file");
  run_cmd->add_option("--config", config_path, "Experiment config file")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "Override the config seed");
  run_cmd->add_option("--out", out_dir, "Output directory (default .)");
  run_cmd->add_flag("--save-policy", save_policy,
                    "Also write the final joint policy as JSON");

  auto* list_cmd = app.add_subcommand("list-games", "List built-in games");

  std::string describe_name;
  auto* describe_cmd = app.add_subcommand("describe-game", "Describe a built-in game");
  describe_cmd->add_option("name", describe_name, "Game name")->required();

  std::string eval_game, eval_policy, eval_measure, eval_teams;
  double eval_reference = 0.0;
  int eval_team_updates = 100;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a policy file on a game");
  eval_cmd->add_option("--game", eval_game, "Game spec, e.g. kuhn_poker:players=3")
      ->required();
  eval_cmd->add_option("--policy", eval_policy, "JSON policy file")->required();
  eval_cmd->add_option("--measure", eval_measure, "optgap|nashconv|ccegap|sw")
      ->required();
  auto* ref_opt = eval_cmd->add_option("--reference", eval_reference,
                                       "Optimal value for optgap");
  eval_cmd->add_option("--teams", eval_teams, "Team partition, e.g. 1,2|3");
  eval_cmd->add_option("--team-br-updates", eval_team_updates,
                       "Updates in the team best-response subroutine");

  try {
    app.parse(argc, argv);
    if (run_cmd->parsed())
      return run_command(config_path, seed, seed_opt->count() > 0, out_dir,
                         save_policy);
    if (list_cmd->parsed()) {
      for (const std::string& name : mdbench::list_games()) std::cout << name << "\n";
      return 0;
    }
    if (describe_cmd->parsed()) {
      std::cout << mdbench::describe_game(describe_name);
      return 0;
    }
    if (eval_cmd->parsed())
      return eval_command(eval_game, eval_policy, eval_measure, eval_reference,
                          ref_opt->count() > 0, eval_teams, eval_team_updates);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const mdbench::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const mdbench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
