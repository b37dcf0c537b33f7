#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdbench/game_ops.hpp"
#include "mdbench/game_tree.hpp"
#include "mdbench/mmd.hpp"

namespace mdbench {

enum class MeasureKind { OptGap, NashConv, CceGap, SocialWelfare };

MeasureKind parse_measure(const std::string& name);
std::string measure_name(MeasureKind kind);

// V(root, optimum) - V(root, joint), with the optimum value supplied by the
// caller (exhaustive enumeration for the built-in games). V is player 1's
// value, which equals the shared value in cooperative games.
double opt_gap(const GameTree& tree, const JointPolicy& joint, double v_star);

// Sum over players of the exact best-response gain.
double nash_conv(const GameTree& tree, const JointPolicy& joint);

// For the product policies every algorithm here produces, the coarse
// correlated deviation benchmark coincides with the Nash one; kept as a
// distinct measure for configuration parity.
double cce_gap(const GameTree& tree, const JointPolicy& joint);

// Sum of all players' expected values.
double social_welfare(const GameTree& tree, const JointPolicy& joint);

// Mean expected value over the team's members (members share one value in
// the team-reward games).
double team_value(const GameTree& tree, const JointPolicy& joint,
                  const std::vector<PlayerId>& team);

struct TeamBestResponseResult {
  JointPolicy joint;      // input joint with the team's policies replaced
  double value = 0.0;     // team value of the returned joint
  std::vector<double> trace;  // team value before each update and at the end
};

// Approximate team best response: the non-team players stay fixed while the
// team runs synchronous KL proximal updates from the current joint policy,
// with the starting policy as the magnet. A better response, not an exact
// best response.
TeamBestResponseResult team_best_response(const GameTree& tree,
                                          const JointPolicy& joint,
                                          const std::vector<PlayerId>& team,
                                          int n_updates,
                                          const MmdConfig& config = MmdConfig(),
                                          bool record_trace = false);

// Team-deviation NashConv: exact best response for singleton teams, the
// approximate team best response for larger ones.
double mcc_nash_conv(const GameTree& tree, const JointPolicy& joint,
                     const TeamPartition& teams, int team_br_updates = 100,
                     const MmdConfig& config = MmdConfig());

// Maximum of player 1's expected value over all deterministic joint
// policies. Throws ConfigError when the enumeration would exceed max_combos.
double exhaustive_optimal_value(const GameTree& tree,
                                double max_combos = 2e7);

// A configured measure: what to evaluate plus the inputs some kinds need.
struct Measure {
  MeasureKind kind = MeasureKind::NashConv;
  std::optional<double> reference_value;   // OptGap
  std::optional<TeamPartition> teams;      // team-deviation NashConv
  int team_br_updates = 100;
  MmdConfig team_br_config;

  void validate() const;
  double value(const GameTree& tree, const JointPolicy& joint) const;
  // Minimization view: social welfare is sign-flipped, everything else is
  // already a gap.
  double loss(const GameTree& tree, const JointPolicy& joint) const;
};

}  // namespace mdbench
