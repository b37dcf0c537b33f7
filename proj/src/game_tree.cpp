#include "mdbench/game_tree.hpp"

#include <cmath>
#include <sstream>

#include "mdbench/errors.hpp"

namespace mdbench {

Node Node::chance(std::vector<ChanceOutcome> outcomes) {
  Node n;
  n.kind = NodeKind::Chance;
  n.outcomes = std::move(outcomes);
  return n;
}

Node Node::decision(PlayerId player, std::string infostate,
                    std::vector<ActionEdge> actions) {
  Node n;
  n.kind = NodeKind::Decision;
  n.player = player;
  n.infostate = std::move(infostate);
  n.actions = std::move(actions);
  return n;
}

Node Node::terminal(Eigen::VectorXd payoffs) {
  Node n;
  n.kind = NodeKind::Terminal;
  n.payoffs = std::move(payoffs);
  return n;
}

GameTree::GameTree(int player_count, std::vector<Node> nodes, int root,
                   double discount)
    : player_count_(player_count),
      nodes_(std::move(nodes)),
      root_(root),
      discount_(discount),
      index_(player_count) {
  build_index_and_validate();
}

void GameTree::build_index_and_validate() {
  if (player_count_ < 1) throw ConfigError("game needs at least one player");
  if (root_ < 0 || root_ >= num_nodes()) throw ConfigError("root id out of range");

  std::vector<int> parents(nodes_.size(), 0);
  for (int id = 0; id < num_nodes(); ++id) {
    const Node& n = nodes_[id];
    switch (n.kind) {
      case NodeKind::Chance: {
        if (n.outcomes.empty())
          throw ConfigError("chance node " + std::to_string(id) + " has no outcomes");
        double sum = 0.0;
        for (const auto& o : n.outcomes) {
          if (o.prob < 0.0)
            throw ConfigError("chance node " + std::to_string(id) +
                              " has a negative probability");
          if (o.child < 0 || o.child >= num_nodes())
            throw ConfigError("chance node " + std::to_string(id) +
                              " references an unknown child");
          parents[o.child]++;
          sum += o.prob;
        }
        if (std::abs(sum - 1.0) > 1e-12)
          throw ConfigError("chance node " + std::to_string(id) +
                            " probabilities sum to " + std::to_string(sum));
        break;
      }
      case NodeKind::Decision: {
        if (n.player < 0 || n.player >= player_count_)
          throw ConfigError("decision node " + std::to_string(id) +
                            " has an out-of-range player");
        if (n.actions.empty())
          throw ConfigError("decision node " + std::to_string(id) + " has no actions");
        for (const auto& a : n.actions) {
          if (a.child < 0 || a.child >= num_nodes())
            throw ConfigError("decision node " + std::to_string(id) +
                              " references an unknown child");
          parents[a.child]++;
        }
        auto& info = index_[n.player][n.infostate];
        if (info.nodes.empty()) {
          info.num_actions = static_cast<int>(n.actions.size());
          for (const auto& a : n.actions) info.action_labels.push_back(a.label);
        } else {
          if (info.num_actions != static_cast<int>(n.actions.size()))
            throw ConfigError("infostate \"" + n.infostate +
                              "\" violates perfect recall: inconsistent action count");
          for (size_t i = 0; i < n.actions.size(); ++i) {
            if (info.action_labels[i] != n.actions[i].label)
              throw ConfigError("infostate \"" + n.infostate +
                                "\" violates perfect recall: inconsistent action labels");
          }
        }
        info.nodes.push_back(id);
        max_actions_ = std::max(max_actions_, static_cast<int>(n.actions.size()));
        break;
      }
      case NodeKind::Terminal: {
        if (n.payoffs.size() != player_count_)
          throw ConfigError("terminal node " + std::to_string(id) +
                            " has a payoff vector of length " +
                            std::to_string(n.payoffs.size()) + ", expected " +
                            std::to_string(player_count_));
        break;
      }
    }
  }
  // Tree shape: the root has no parent, every other node exactly one.
  for (int id = 0; id < num_nodes(); ++id) {
    if (id == root_) {
      if (parents[id] != 0)
        throw ConfigError("root node " + std::to_string(id) + " has a parent");
    } else if (parents[id] != 1) {
      throw ConfigError("node " + std::to_string(id) + " has " +
                        std::to_string(parents[id]) +
                        " parents; the game must be a tree");
    }
  }
  // Infostates may not mix owners. Keys are per-player maps already, so the
  // only remaining cross-check is that the same key never appears for two
  // players with conflicting data; distinct players may reuse key text.
}

const std::map<std::string, InfostateInfo>& GameTree::infostates(PlayerId p) const {
  if (p < 0 || p >= player_count_) throw ConfigError("player id out of range");
  return index_[p];
}

const InfostateInfo& GameTree::infostate(PlayerId p, const std::string& key) const {
  const auto& table = infostates(p);
  auto it = table.find(key);
  if (it == table.end())
    throw ConfigError("unknown infostate \"" + key + "\" for player " +
                      std::to_string(p + 1));
  return it->second;
}

JointPolicy JointPolicy::uniform(const GameTree& tree) {
  JointPolicy joint(tree.player_count());
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    for (const auto& [key, info] : tree.infostates(p)) {
      joint.tables_[p][key] =
          Eigen::VectorXd::Constant(info.num_actions, 1.0 / info.num_actions);
    }
  }
  return joint;
}

const Eigen::VectorXd& JointPolicy::at(PlayerId p, const std::string& key) const {
  if (p < 0 || p >= player_count()) throw ConfigError("player id out of range");
  auto it = tables_[p].find(key);
  if (it == tables_[p].end())
    throw ConfigError("policy has no entry for infostate \"" + key +
                      "\" of player " + std::to_string(p + 1));
  return it->second;
}

void JointPolicy::set(PlayerId p, const std::string& key, Eigen::VectorXd probs) {
  if (p < 0 || p >= player_count()) throw ConfigError("player id out of range");
  tables_[p][key] = std::move(probs);
}

void JointPolicy::validate_against(const GameTree& tree, double tol) const {
  if (player_count() != tree.player_count())
    throw ConfigError("policy player count does not match the game");
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    const auto& expected = tree.infostates(p);
    for (const auto& [key, info] : expected) {
      const Eigen::VectorXd& v = at(p, key);
      if (v.size() != info.num_actions)
        throw ConfigError("policy entry \"" + key + "\" has " +
                          std::to_string(v.size()) + " probabilities, expected " +
                          std::to_string(info.num_actions));
      if (v.minCoeff() < 0.0)
        throw ConfigError("policy entry \"" + key + "\" has a negative probability");
      if (std::abs(v.sum() - 1.0) > tol)
        throw ConfigError("policy entry \"" + key + "\" sums to " +
                          std::to_string(v.sum()));
    }
    if (tables_[p].size() != expected.size()) {
      for (const auto& [key, v] : tables_[p]) {
        if (!expected.count(key))
          throw ConfigError("policy has an entry \"" + key +
                            "\" that is not an infostate of player " +
                            std::to_string(p + 1));
      }
    }
  }
}

}  // namespace mdbench
