#include "mdbench/game_ops.hpp"

#include <functional>

#include "mdbench/errors.hpp"

namespace mdbench {

DecisionPointCounts count_decision_points(const GameTree& tree) {
  DecisionPointCounts counts;
  counts.per_player.resize(tree.player_count(), 0);
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    counts.per_player[p] = static_cast<int>(tree.infostates(p).size());
    counts.total += counts.per_player[p];
  }
  return counts;
}

namespace {

// Expected payoff of the subtree rooted at each node, one column per node.
Eigen::MatrixXd subtree_values(const GameTree& tree, const JointPolicy& joint) {
  Eigen::MatrixXd values(tree.player_count(), tree.num_nodes());
  std::function<void(int)> eval = [&](int id) {
    const Node& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::Terminal:
        values.col(id) = n.payoffs;
        break;
      case NodeKind::Chance: {
        values.col(id).setZero();
        for (const auto& o : n.outcomes) {
          eval(o.child);
          values.col(id) += o.prob * values.col(o.child);
        }
        break;
      }
      case NodeKind::Decision: {
        const Eigen::VectorXd& probs = joint.at(n.player, n.infostate);
        if (probs.size() != static_cast<Eigen::Index>(n.actions.size()))
          throw ConfigError("policy entry \"" + n.infostate +
                            "\" does not match the action count");
        values.col(id).setZero();
        for (size_t i = 0; i < n.actions.size(); ++i) {
          eval(n.actions[i].child);
          values.col(id) +=
              probs[static_cast<Eigen::Index>(i)] * values.col(n.actions[i].child);
        }
        break;
      }
    }
  };
  eval(tree.root());
  return values;
}

}  // namespace

Eigen::VectorXd expected_values(const GameTree& tree, const JointPolicy& joint) {
  return subtree_values(tree, joint).col(tree.root());
}

std::map<std::string, Eigen::VectorXd> q_values(const GameTree& tree,
                                                const JointPolicy& joint,
                                                PlayerId player) {
  if (player < 0 || player >= tree.player_count())
    throw ConfigError("player id out of range");
  const Eigen::MatrixXd values = subtree_values(tree, joint);

  std::map<std::string, Eigen::VectorXd> q;
  for (const auto& [key, info] : tree.infostates(player))
    q[key] = Eigen::VectorXd::Zero(info.num_actions);

  // Top-down pass carrying the counterfactual weight: chance reach times the
  // other players' reach, the acting player's own probabilities excluded.
  std::function<void(int, double)> walk = [&](int id, double weight) {
    const Node& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::Terminal:
        break;
      case NodeKind::Chance:
        for (const auto& o : n.outcomes) walk(o.child, weight * o.prob);
        break;
      case NodeKind::Decision: {
        const Eigen::VectorXd& probs = joint.at(n.player, n.infostate);
        if (n.player == player) {
          Eigen::VectorXd& acc = q[n.infostate];
          for (size_t i = 0; i < n.actions.size(); ++i) {
            acc[static_cast<Eigen::Index>(i)] +=
                weight * values(player, n.actions[i].child);
            walk(n.actions[i].child, weight);
          }
        } else {
          for (size_t i = 0; i < n.actions.size(); ++i)
            walk(n.actions[i].child, weight * probs[static_cast<Eigen::Index>(i)]);
        }
        break;
      }
    }
  };
  walk(tree.root(), 1.0);
  return q;
}

namespace {

// Counterfactual weight of every node for one player.
std::vector<double> counterfactual_weights(const GameTree& tree,
                                           const JointPolicy& joint,
                                           PlayerId player) {
  std::vector<double> w(tree.num_nodes(), 0.0);
  std::function<void(int, double)> walk = [&](int id, double weight) {
    w[id] += weight;
    const Node& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::Terminal:
        break;
      case NodeKind::Chance:
        for (const auto& o : n.outcomes) walk(o.child, weight * o.prob);
        break;
      case NodeKind::Decision: {
        if (n.player == player) {
          for (const auto& a : n.actions) walk(a.child, weight);
        } else {
          const Eigen::VectorXd& probs = joint.at(n.player, n.infostate);
          for (size_t i = 0; i < n.actions.size(); ++i)
            walk(n.actions[i].child, weight * probs[static_cast<Eigen::Index>(i)]);
        }
        break;
      }
    }
  };
  walk(tree.root(), 1.0);
  return w;
}

}  // namespace

BestResponse best_response(const GameTree& tree, const JointPolicy& joint,
                           PlayerId player) {
  if (player < 0 || player >= tree.player_count())
    throw ConfigError("player id out of range");
  const std::vector<double> weights = counterfactual_weights(tree, joint, player);

  std::map<std::string, int> choice;          // infostate -> chosen action
  std::vector<double> value(tree.num_nodes(), 0.0);
  std::vector<char> done(tree.num_nodes(), 0);

  std::function<double(int)> br_value;
  // Decides an infostate's action by comparing the counterfactually weighted
  // responder values across all member nodes. Lazy evaluation: a deeper
  // infostate is decided when its members are first reached from here, which
  // is well-founded under perfect recall.
  std::function<int(const std::string&)> decide = [&](const std::string& key) -> int {
    auto it = choice.find(key);
    if (it != choice.end()) return it->second;
    const InfostateInfo& info = tree.infostate(player, key);
    Eigen::VectorXd action_values = Eigen::VectorXd::Zero(info.num_actions);
    for (int member : info.nodes) {
      const Node& m = tree.node(member);
      for (int a = 0; a < info.num_actions; ++a)
        action_values[a] += weights[member] * br_value(m.actions[a].child);
    }
    int best = 0;
    for (int a = 1; a < info.num_actions; ++a)
      if (action_values[a] > action_values[best]) best = a;
    choice[key] = best;
    return best;
  };

  br_value = [&](int id) -> double {
    if (done[id]) return value[id];
    const Node& n = tree.node(id);
    double v = 0.0;
    switch (n.kind) {
      case NodeKind::Terminal:
        v = n.payoffs[player];
        break;
      case NodeKind::Chance:
        for (const auto& o : n.outcomes) v += o.prob * br_value(o.child);
        break;
      case NodeKind::Decision: {
        if (n.player == player) {
          v = br_value(n.actions[decide(n.infostate)].child);
        } else {
          const Eigen::VectorXd& probs = joint.at(n.player, n.infostate);
          for (size_t i = 0; i < n.actions.size(); ++i)
            v += probs[static_cast<Eigen::Index>(i)] * br_value(n.actions[i].child);
        }
        break;
      }
    }
    value[id] = v;
    done[id] = 1;
    return v;
  };

  BestResponse br;
  br.value = br_value(tree.root());
  for (const auto& [key, info] : tree.infostates(player)) {
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(info.num_actions);
    probs[decide(key)] = 1.0;
    br.policy[key] = std::move(probs);
  }
  return br;
}

void validate_partition(const TeamPartition& teams, int player_count) {
  std::vector<int> seen(player_count, 0);
  for (const auto& team : teams) {
    if (team.empty()) throw ConfigError("team partition contains an empty team");
    for (PlayerId p : team) {
      if (p < 0 || p >= player_count)
        throw ConfigError("team partition references player " +
                          std::to_string(p + 1) + ", which does not exist");
      seen[p]++;
    }
  }
  for (PlayerId p = 0; p < player_count; ++p) {
    if (seen[p] != 1)
      throw ConfigError("team partition must cover player " +
                        std::to_string(p + 1) + " exactly once");
  }
}

GameTree apply_team_rewards(const GameTree& tree, const TeamPartition& teams) {
  validate_partition(teams, tree.player_count());
  std::vector<int> team_of(tree.player_count());
  std::vector<int> team_size(teams.size());
  for (size_t t = 0; t < teams.size(); ++t) {
    team_size[t] = static_cast<int>(teams[t].size());
    for (PlayerId p : teams[t]) team_of[p] = static_cast<int>(t);
  }

  std::vector<Node> nodes;
  nodes.reserve(tree.num_nodes());
  for (int id = 0; id < tree.num_nodes(); ++id) {
    Node n = tree.node(id);
    if (n.kind == NodeKind::Terminal) {
      Eigen::VectorXd team_sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(teams.size()));
      for (PlayerId p = 0; p < tree.player_count(); ++p)
        team_sum[team_of[p]] += n.payoffs[p];
      for (PlayerId p = 0; p < tree.player_count(); ++p)
        n.payoffs[p] = team_sum[team_of[p]] / team_size[team_of[p]];
    }
    nodes.push_back(std::move(n));
  }
  return GameTree(tree.player_count(), std::move(nodes), tree.root(), tree.discount());
}

GameTree fix_player_policy(const GameTree& tree, PlayerId player,
                           const JointPolicy::Table& policy, bool drop_player) {
  if (player < 0 || player >= tree.player_count())
    throw ConfigError("player id out of range");
  for (const auto& [key, info] : tree.infostates(player)) {
    auto it = policy.find(key);
    if (it == policy.end())
      throw ConfigError("fixed policy is missing infostate \"" + key + "\"");
    if (it->second.size() != info.num_actions)
      throw ConfigError("fixed policy entry \"" + key +
                        "\" does not match the action count");
    if (it->second.minCoeff() < 0.0 || std::abs(it->second.sum() - 1.0) > 1e-9)
      throw ConfigError("fixed policy entry \"" + key +
                        "\" is not a probability distribution");
  }

  const int new_count = drop_player ? tree.player_count() - 1 : tree.player_count();
  if (new_count < 1)
    throw ConfigError("cannot drop the only player of a game");

  std::vector<Node> nodes;
  nodes.reserve(tree.num_nodes());
  for (int id = 0; id < tree.num_nodes(); ++id) {
    const Node& n = tree.node(id);
    Node out;
    switch (n.kind) {
      case NodeKind::Terminal: {
        if (drop_player) {
          Eigen::VectorXd payoffs(new_count);
          Eigen::Index j = 0;
          for (PlayerId p = 0; p < tree.player_count(); ++p)
            if (p != player) payoffs[j++] = n.payoffs[p];
          out = Node::terminal(std::move(payoffs));
        } else {
          out = n;
        }
        break;
      }
      case NodeKind::Chance:
        out = n;
        break;
      case NodeKind::Decision: {
        if (n.player == player) {
          Eigen::VectorXd probs = policy.at(n.infostate);
          probs /= probs.sum();  // chance rows validate at 1e-12
          std::vector<ChanceOutcome> outcomes;
          outcomes.reserve(n.actions.size());
          for (size_t i = 0; i < n.actions.size(); ++i)
            outcomes.push_back({probs[static_cast<Eigen::Index>(i)], n.actions[i].child});
          out = Node::chance(std::move(outcomes));
        } else {
          out = n;
          if (drop_player && n.player > player) out.player = n.player - 1;
        }
        break;
      }
    }
    nodes.push_back(std::move(out));
  }
  return GameTree(new_count, std::move(nodes), tree.root(), tree.discount());
}

}  // namespace mdbench
