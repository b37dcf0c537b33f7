// End-to-end checks of the command-line tool: subcommands, output files, and
// the documented exit codes (0 success, 1 config error).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef MDBENCH_CLI
#error "MDBENCH_CLI must point at the command-line binary"
#endif

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args, const std::string& log) {
  const std::string command =
      std::string(MDBENCH_CLI) + " " + args + " > " + log + " 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "mdbench_cli_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("list-games and describe-game") {
  TempDir tmp;
  const std::string log = (tmp.path / "out.txt").string();
  CHECK(run_cli("list-games", log) == 0);
  CHECK(slurp(log).find("kuhn_poker") != std::string::npos);

  CHECK(run_cli("describe-game leduc_poker", log) == 0);
  CHECK(slurp(log).find("936") != std::string::npos);

  CHECK(run_cli("describe-game chess", log) == 1);
}

TEST_CASE("run writes csv and json and respects seeds") {
  TempDir tmp;
  const std::string config_path = (tmp.path / "exp.conf").string();
  {
    std::ofstream out(config_path);
    out << "game = kuhn_poker\n"
           "algorithm = cfr_plus\n"
           "measure = nashconv\n"
           "iterations = 50\n"
           "eval_every = 10\n"
           "seed = 1\n";
  }
  const std::string log = (tmp.path / "out.txt").string();
  CHECK(run_cli("run --config " + config_path + " --out " + tmp.path.string(), log) == 0);

  const std::string stem =
      (tmp.path / "kuhn-poker_cfr_plus_nashconv_seed1").string();
  REQUIRE(fs::exists(stem + ".csv"));
  REQUIRE(fs::exists(stem + ".json"));
  const std::string csv = slurp(stem + ".csv");
  CHECK(csv.rfind("iteration,measure,value,wall_seconds", 0) == 0);
  CHECK(slurp(stem + ".json").find("\"final\"") != std::string::npos);

  // A seed override lands in the output name, and --save-policy dumps the
  // final joint policy.
  CHECK(run_cli("run --config " + config_path + " --seed 9 --save-policy --out " +
                    tmp.path.string(),
                log) == 0);
  CHECK(fs::exists((tmp.path / "kuhn-poker_cfr_plus_nashconv_seed9.csv")));
  const std::string policy_path =
      (tmp.path / "kuhn-poker_cfr_plus_nashconv_seed9_policy.json").string();
  REQUIRE(fs::exists(policy_path));
  // The dumped policy feeds straight back into eval.
  CHECK(run_cli("eval --game kuhn_poker --policy " + policy_path +
                    " --measure nashconv",
                log) == 0);
  CHECK(slurp(log).find("nashconv = ") != std::string::npos);

  // Broken configs exit with code 1.
  {
    std::ofstream out(config_path);
    out << "game = nonexistent_game\n";
  }
  CHECK(run_cli("run --config " + config_path, log) == 1);
  CHECK(run_cli("run --config " + (tmp.path / "missing.conf").string(), log) == 1);
}

TEST_CASE("eval scores a policy file") {
  TempDir tmp;
  const std::string policy_path = (tmp.path / "policy.json").string();
  {
    std::ofstream out(policy_path);
    out << R"({"players": [
      {"p1": [0.5, 0.5]},
      {"p2": [0.5, 0.5]}
    ]})";
  }
  const std::string game_path = (tmp.path / "pennies.game").string();
  {
    std::ofstream out(game_path);
    out << "game matching_pennies players 2\n"
           "node t_hh terminal [ 1 -1 ]\n"
           "node t_ht terminal [ -1 1 ]\n"
           "node t_th terminal [ -1 1 ]\n"
           "node t_tt terminal [ 1 -1 ]\n"
           "node r player 1 infostate \"p1\" { heads -> h tails -> t }\n"
           "node h player 2 infostate \"p2\" { heads -> t_hh tails -> t_ht }\n"
           "node t player 2 infostate \"p2\" { heads -> t_th tails -> t_tt }\n"
           "root r\n";
  }
  const std::string log = (tmp.path / "out.txt").string();
  CHECK(run_cli("eval --game file:" + game_path + " --policy " + policy_path +
                    " --measure nashconv",
                log) == 0);
  CHECK(slurp(log).find("nashconv = 0") != std::string::npos);

  // Incomplete policies are a config error.
  {
    std::ofstream out(policy_path);
    out << R"({"players": [{"p1": [0.5, 0.5]}, {}]})";
  }
  CHECK(run_cli("eval --game file:" + game_path + " --policy " + policy_path +
                    " --measure nashconv",
                log) == 1);
}
