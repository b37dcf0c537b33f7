#pragma once

#include <string>

#include "mdbench/game_tree.hpp"

namespace mdbench {

// Parses the line-oriented game description format:
//
//   game <name> players <N>
//   node <id> chance { <prob> -> <child-id> ... }
//   node <id> player <p> infostate "<key>" { <action-label> -> <child-id> ... }
//   node <id> terminal [ <payoff_1> ... <payoff_N> ]
//   root <id>
//
// '#' starts a comment, players are numbered 1..N. Errors carry line and
// column positions. Chance rows must sum to 1 within 1e-9 and are then
// normalized exactly.
GameTree parse_game_file(const std::string& text);

GameTree load_game_file(const std::string& path);

}  // namespace mdbench
