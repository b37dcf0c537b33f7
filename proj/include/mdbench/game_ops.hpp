#pragma once

#include <map>
#include <string>
#include <vector>

#include "mdbench/game_tree.hpp"

namespace mdbench {

struct DecisionPointCounts {
  std::vector<int> per_player;
  int total = 0;
};

DecisionPointCounts count_decision_points(const GameTree& tree);

// Root expected payoff for every player under the joint policy.
Eigen::VectorXd expected_values(const GameTree& tree, const JointPolicy& joint);

// Counterfactual action values for one player: for each of their infostates,
// Q(tau, a) = sum over member nodes of (chance reach x other players' reach x
// expected payoff after taking a). The acting player's own reach is excluded,
// so unreached infostates yield zero vectors.
std::map<std::string, Eigen::VectorXd> q_values(const GameTree& tree,
                                                const JointPolicy& joint,
                                                PlayerId player);

struct BestResponse {
  JointPolicy::Table policy;  // deterministic (one-hot) per infostate
  double value = 0.0;         // V_player(root, br x joint_{-player})
};

// Exact best response via counterfactually weighted backward induction.
BestResponse best_response(const GameTree& tree, const JointPolicy& joint,
                           PlayerId player);

using TeamPartition = std::vector<std::vector<PlayerId>>;

// Checks that the partition covers every player exactly once.
void validate_partition(const TeamPartition& teams, int player_count);

// Replaces every terminal payoff entry by its team average. Tree structure
// and infostates are untouched.
GameTree apply_team_rewards(const GameTree& tree, const TeamPartition& teams);

// Turns one player's decision nodes into chance nodes with the given action
// probabilities. With drop_player set, that player's payoff entry is removed
// and the remaining players are renumbered in order.
GameTree fix_player_policy(const GameTree& tree, PlayerId player,
                           const JointPolicy::Table& policy, bool drop_player);

}  // namespace mdbench
