#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdbench/game_ops.hpp"
#include "mdbench/game_tree.hpp"

namespace mdbench {

// A named game plus its parameters, e.g. "kuhn_poker:players=3".
struct GameSpec {
  std::string name;
  std::map<std::string, std::string> params;

  // Accepts "name" or "name:key=value,key=value".
  static GameSpec parse(const std::string& text);
  std::string to_string() const;

  int get_int(const std::string& key, int fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  bool has(const std::string& key) const { return params.count(key) != 0; }
};

struct BuiltGame {
  GameTree tree;
  std::optional<TeamPartition> teams;  // set for the mixed-team variants
  std::string summary;
};

bool is_builtin(const std::string& name);
std::vector<std::string> builtin_names();

// Builds a registered game. Throws ConfigError for unknown names or invalid
// parameters.
BuiltGame make_builtin(const GameSpec& spec);

// Individual builders, exposed for direct use in tests.
GameTree make_kuhn(int players);
GameTree make_leduc();
GameTree make_goofspiel(int players, int num_cards, const std::string& point_order);

struct TinyHanabiPayoff {
  int num_chance = 2;
  int num_actions = 2;
  // Row-major over (draw1, draw2, action1, action2).
  std::vector<double> values;

  double at(int d1, int d2, int a1, int a2) const;
  void validate() const;

  static TinyHanabiPayoff default_a();  // num_actions = 3
  static TinyHanabiPayoff default_b();  // num_actions = 2
  static TinyHanabiPayoff default_c();  // num_actions = 2
};

GameTree make_tiny_hanabi(const TinyHanabiPayoff& payoff);

}  // namespace mdbench
