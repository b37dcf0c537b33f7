#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "mdbench/game_tree.hpp"

namespace mdbench {

struct RegretEntry {
  Eigen::VectorXd regret;
  Eigen::VectorXd avg_weight;
};

struct RegretState {
  std::vector<std::map<std::string, RegretEntry>> entries;  // per player
  long iteration = 0;

  static RegretState init(const GameTree& tree);
};

struct CfrPolicies {
  JointPolicy current;
  JointPolicy average;
};

// Regret matching over the positive part of the cumulative regrets; uniform
// when nothing is positive.
Eigen::VectorXd regret_matching(const Eigen::VectorXd& regret);

// One iteration. plus=false: simultaneous updates with uniform strategy
// averaging. plus=true: alternating updates, regrets floored at zero, and
// linear strategy averaging. Returns the current and average joint policies;
// measures are conventionally reported on the average.
CfrPolicies cfr_iteration(const GameTree& tree, RegretState& state, bool plus);

}  // namespace mdbench
