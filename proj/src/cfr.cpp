#include "mdbench/cfr.hpp"

#include <functional>

#include "mdbench/errors.hpp"

namespace mdbench {

RegretState RegretState::init(const GameTree& tree) {
  RegretState state;
  state.entries.resize(tree.player_count());
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    for (const auto& [key, info] : tree.infostates(p)) {
      RegretEntry entry;
      entry.regret = Eigen::VectorXd::Zero(info.num_actions);
      entry.avg_weight = Eigen::VectorXd::Zero(info.num_actions);
      state.entries[p][key] = std::move(entry);
    }
  }
  return state;
}

Eigen::VectorXd regret_matching(const Eigen::VectorXd& regret) {
  Eigen::VectorXd positive = regret.cwiseMax(0.0);
  const double sum = positive.sum();
  if (sum <= 0.0)
    return Eigen::VectorXd::Constant(regret.size(), 1.0 / regret.size());
  return positive / sum;
}

namespace {

JointPolicy policies_from_regrets(const GameTree& tree, const RegretState& state) {
  JointPolicy joint(tree.player_count());
  for (PlayerId p = 0; p < tree.player_count(); ++p)
    for (const auto& [key, entry] : state.entries[p])
      joint.set(p, key, regret_matching(entry.regret));
  return joint;
}

JointPolicy average_policies(const GameTree& tree, const RegretState& state) {
  JointPolicy joint(tree.player_count());
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    for (const auto& [key, entry] : state.entries[p]) {
      const double sum = entry.avg_weight.sum();
      if (sum <= 0.0) {
        joint.set(p, key, Eigen::VectorXd::Constant(
                              entry.avg_weight.size(),
                              1.0 / entry.avg_weight.size()));
      } else {
        joint.set(p, key, entry.avg_weight / sum);
      }
    }
  }
  return joint;
}

// One traversal under sigma. Accumulates counterfactual regret deltas for the
// players flagged in update_regret and average-strategy weight (scaled by
// avg_scale) for the players flagged in update_avg.
struct Traversal {
  const GameTree& tree;
  const JointPolicy& sigma;
  RegretState& state;
  std::vector<std::map<std::string, Eigen::VectorXd>>& regret_deltas;
  const std::vector<bool>& update_regret;
  const std::vector<bool>& update_avg;
  double avg_scale;

  Eigen::VectorXd walk(int id, std::vector<double>& reach, double chance) {
    const Node& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::Terminal:
        return n.payoffs;
      case NodeKind::Chance: {
        Eigen::VectorXd value = Eigen::VectorXd::Zero(tree.player_count());
        for (const auto& o : n.outcomes)
          value += o.prob * walk(o.child, reach, chance * o.prob);
        return value;
      }
      case NodeKind::Decision: {
        const Eigen::VectorXd& probs = sigma.at(n.player, n.infostate);
        const int num_actions = static_cast<int>(n.actions.size());
        Eigen::MatrixXd child_values(tree.player_count(), num_actions);
        for (int a = 0; a < num_actions; ++a) {
          const double saved = reach[n.player];
          reach[n.player] *= probs[a];
          child_values.col(a) = walk(n.actions[a].child, reach, chance);
          reach[n.player] = saved;
        }
        Eigen::VectorXd value = child_values * probs;

        if (update_regret[n.player]) {
          double counterfactual = chance;
          for (PlayerId q = 0; q < tree.player_count(); ++q)
            if (q != n.player) counterfactual *= reach[q];
          if (counterfactual != 0.0) {
            Eigen::VectorXd& delta = regret_deltas[n.player][n.infostate];
            if (delta.size() == 0) delta = Eigen::VectorXd::Zero(num_actions);
            for (int a = 0; a < num_actions; ++a)
              delta[a] += counterfactual *
                          (child_values(n.player, a) - value[n.player]);
          }
        }
        if (update_avg[n.player] && reach[n.player] != 0.0) {
          Eigen::VectorXd& weight =
              state.entries[n.player].at(n.infostate).avg_weight;
          weight += avg_scale * reach[n.player] * probs;
        }
        return value;
      }
    }
    return Eigen::VectorXd::Zero(tree.player_count());
  }
};

void apply_deltas(RegretState& state,
                  std::vector<std::map<std::string, Eigen::VectorXd>>& deltas,
                  bool floor_at_zero) {
  for (PlayerId p = 0; p < static_cast<PlayerId>(deltas.size()); ++p) {
    for (auto& [key, delta] : deltas[p]) {
      Eigen::VectorXd& regret = state.entries[p].at(key).regret;
      regret += delta;
      if (floor_at_zero) regret = regret.cwiseMax(0.0);
    }
  }
}

}  // namespace

CfrPolicies cfr_iteration(const GameTree& tree, RegretState& state, bool plus) {
  const int players = tree.player_count();
  state.iteration += 1;
  const double t = static_cast<double>(state.iteration);

  if (!plus) {
    JointPolicy sigma = policies_from_regrets(tree, state);
    std::vector<std::map<std::string, Eigen::VectorXd>> deltas(players);
    std::vector<bool> all(players, true);
    Traversal traversal{tree, sigma, state, deltas, all, all, 1.0};
    std::vector<double> reach(players, 1.0);
    traversal.walk(tree.root(), reach, 1.0);
    apply_deltas(state, deltas, false);
  } else {
    for (PlayerId u = 0; u < players; ++u) {
      JointPolicy sigma = policies_from_regrets(tree, state);
      std::vector<std::map<std::string, Eigen::VectorXd>> deltas(players);
      std::vector<bool> only(players, false);
      only[u] = true;
      Traversal traversal{tree, sigma, state, deltas, only, only, t};
      std::vector<double> reach(players, 1.0);
      traversal.walk(tree.root(), reach, 1.0);
      apply_deltas(state, deltas, true);
    }
  }

  return {policies_from_regrets(tree, state), average_policies(tree, state)};
}

}  // namespace mdbench
