#include "mdbench/measures.hpp"

#include <algorithm>
#include <cmath>

#include "mdbench/errors.hpp"

namespace mdbench {

MeasureKind parse_measure(const std::string& name) {
  if (name == "optgap") return MeasureKind::OptGap;
  if (name == "nashconv") return MeasureKind::NashConv;
  if (name == "ccegap") return MeasureKind::CceGap;
  if (name == "sw" || name == "social_welfare") return MeasureKind::SocialWelfare;
  throw ConfigError("unknown measure \"" + name +
                    "\"; use optgap, nashconv, ccegap, or sw");
}

std::string measure_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::OptGap: return "optgap";
    case MeasureKind::NashConv: return "nashconv";
    case MeasureKind::CceGap: return "ccegap";
    case MeasureKind::SocialWelfare: return "sw";
  }
  return "?";
}

double opt_gap(const GameTree& tree, const JointPolicy& joint, double v_star) {
  return v_star - expected_values(tree, joint)[0];
}

double nash_conv(const GameTree& tree, const JointPolicy& joint) {
  const Eigen::VectorXd values = expected_values(tree, joint);
  double total = 0.0;
  for (PlayerId p = 0; p < tree.player_count(); ++p)
    total += best_response(tree, joint, p).value - values[p];
  return total;
}

double cce_gap(const GameTree& tree, const JointPolicy& joint) {
  return nash_conv(tree, joint);
}

double social_welfare(const GameTree& tree, const JointPolicy& joint) {
  return expected_values(tree, joint).sum();
}

double team_value(const GameTree& tree, const JointPolicy& joint,
                  const std::vector<PlayerId>& team) {
  if (team.empty()) throw ConfigError("team must be nonempty");
  const Eigen::VectorXd values = expected_values(tree, joint);
  double sum = 0.0;
  for (PlayerId p : team) sum += values[p];
  return sum / static_cast<double>(team.size());
}

TeamBestResponseResult team_best_response(const GameTree& tree,
                                          const JointPolicy& joint,
                                          const std::vector<PlayerId>& team,
                                          int n_updates, const MmdConfig& config,
                                          bool record_trace) {
  if (team.empty()) throw ConfigError("team must be nonempty");
  for (PlayerId p : team)
    if (p < 0 || p >= tree.player_count())
      throw ConfigError("team references player " + std::to_string(p + 1) +
                        ", which does not exist");
  config.validate();

  TeamBestResponseResult result{joint, 0.0, {}};

  // The KL step needs strictly positive starting policies; nudge boundary
  // entries inward.
  constexpr double kFloor = 1e-12;
  for (PlayerId p : team) {
    for (auto& [key, probs] : result.joint.table(p)) {
      if (probs.minCoeff() < kFloor) {
        probs = probs.cwiseMax(kFloor);
        probs /= probs.sum();
      }
    }
  }
  // The magnet starts at the (floored) starting policy and then trails the
  // iterates, as in the full solver loop. A frozen magnet would anchor the
  // subroutine's fixed point away from the best response.
  std::vector<JointPolicy::Table> magnet(tree.player_count());
  for (PlayerId p : team) magnet[p] = result.joint.table(p);

  if (record_trace) result.trace.push_back(team_value(tree, result.joint, team));
  for (int step = 0; step < n_updates; ++step) {
    std::vector<std::map<std::string, Eigen::VectorXd>> qs(tree.player_count());
    for (PlayerId p : team) qs[p] = q_values(tree, result.joint, p);
    for (PlayerId p : team) {
      for (const auto& [key, q_vec] : qs[p]) {
        Eigen::VectorXd& rho = magnet[p].at(key);
        Eigen::VectorXd next = mmd_kl_step(q_vec, result.joint.at(p, key), rho, config);
        rho = magnet_update(rho, next, config.eta_tilde);
        result.joint.set(p, key, std::move(next));
      }
    }
    if (record_trace) result.trace.push_back(team_value(tree, result.joint, team));
  }
  result.value = team_value(tree, result.joint, team);
  return result;
}

double mcc_nash_conv(const GameTree& tree, const JointPolicy& joint,
                     const TeamPartition& teams, int team_br_updates,
                     const MmdConfig& config) {
  validate_partition(teams, tree.player_count());
  const Eigen::VectorXd values = expected_values(tree, joint);
  double total = 0.0;
  for (const auto& team : teams) {
    if (team.size() == 1) {
      const PlayerId p = team[0];
      total += best_response(tree, joint, p).value - values[p];
    } else {
      double base = 0.0;
      for (PlayerId p : team) base += values[p];
      base /= static_cast<double>(team.size());
      total += team_best_response(tree, joint, team, team_br_updates, config).value -
               base;
    }
  }
  return total;
}

double exhaustive_optimal_value(const GameTree& tree, double max_combos) {
  // Odometer over the deterministic action choice of every infostate.
  struct Slot {
    PlayerId player;
    const std::string* key;
    int num_actions;
  };
  std::vector<Slot> slots;
  double combos = 1.0;
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    for (const auto& [key, info] : tree.infostates(p)) {
      slots.push_back({p, &key, info.num_actions});
      combos *= info.num_actions;
      if (combos > max_combos)
        throw ConfigError(
            "the game is too large for exhaustive policy enumeration; supply "
            "a reference value instead");
    }
  }

  JointPolicy joint(tree.player_count());
  std::vector<int> choice(slots.size(), 0);
  for (const Slot& s : slots) {
    Eigen::VectorXd one_hot = Eigen::VectorXd::Zero(s.num_actions);
    one_hot[0] = 1.0;
    joint.set(s.player, *s.key, std::move(one_hot));
  }

  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    best = std::max(best, expected_values(tree, joint)[0]);
    size_t i = 0;
    for (; i < slots.size(); ++i) {
      Eigen::VectorXd one_hot = Eigen::VectorXd::Zero(slots[i].num_actions);
      choice[i] = (choice[i] + 1) % slots[i].num_actions;
      one_hot[choice[i]] = 1.0;
      joint.set(slots[i].player, *slots[i].key, std::move(one_hot));
      if (choice[i] != 0) break;
    }
    if (i == slots.size()) break;
  }
  return best;
}

void Measure::validate() const {
  if (kind == MeasureKind::OptGap && !reference_value.has_value())
    throw ConfigError("optgap needs a reference value");
  if (teams.has_value() && kind != MeasureKind::NashConv)
    throw ConfigError("team partitions only apply to the nashconv measure");
  if (team_br_updates < 1) throw ConfigError("team_br_updates must be >= 1");
}

double Measure::value(const GameTree& tree, const JointPolicy& joint) const {
  switch (kind) {
    case MeasureKind::OptGap:
      if (!reference_value.has_value())
        throw ConfigError("optgap needs a reference value");
      return opt_gap(tree, joint, *reference_value);
    case MeasureKind::NashConv:
      if (teams.has_value())
        return mcc_nash_conv(tree, joint, *teams, team_br_updates, team_br_config);
      return nash_conv(tree, joint);
    case MeasureKind::CceGap:
      return cce_gap(tree, joint);
    case MeasureKind::SocialWelfare:
      return social_welfare(tree, joint);
  }
  return 0.0;
}

double Measure::loss(const GameTree& tree, const JointPolicy& joint) const {
  const double v = value(tree, joint);
  return kind == MeasureKind::SocialWelfare ? -v : v;
}

}  // namespace mdbench
