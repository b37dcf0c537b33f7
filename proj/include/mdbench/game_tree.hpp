#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

namespace mdbench {

using PlayerId = int;

enum class NodeKind { Chance, Decision, Terminal };

struct ChanceOutcome {
  double prob;
  int child;
};

struct ActionEdge {
  std::string label;
  int child;
};

struct Node {
  NodeKind kind = NodeKind::Terminal;
  // Chance
  std::vector<ChanceOutcome> outcomes;
  // Decision
  PlayerId player = -1;
  std::string infostate;
  std::vector<ActionEdge> actions;
  // Terminal
  Eigen::VectorXd payoffs;

  static Node chance(std::vector<ChanceOutcome> outcomes);
  static Node decision(PlayerId player, std::string infostate,
                       std::vector<ActionEdge> actions);
  static Node terminal(Eigen::VectorXd payoffs);
};

struct InfostateInfo {
  int num_actions = 0;
  std::vector<std::string> action_labels;
  std::vector<int> nodes;  // member node ids, in discovery order
};

// Immutable extensive-form game tree. Nodes live in a flat arena addressed by
// index; construction validates tree shape, chance distributions, payoff
// lengths, and perfect recall, and builds a per-player infostate index.
class GameTree {
 public:
  GameTree(int player_count, std::vector<Node> nodes, int root,
           double discount = 1.0);

  int player_count() const { return player_count_; }
  int root() const { return root_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_[id]; }
  double discount() const { return discount_; }
  int max_actions() const { return max_actions_; }

  const std::map<std::string, InfostateInfo>& infostates(PlayerId p) const;
  // Throws ConfigError when the key is unknown for that player.
  const InfostateInfo& infostate(PlayerId p, const std::string& key) const;

 private:
  void build_index_and_validate();

  int player_count_;
  std::vector<Node> nodes_;
  int root_;
  double discount_;
  int max_actions_ = 0;
  std::vector<std::map<std::string, InfostateInfo>> index_;
};

// Per-player tables mapping infostate key to a distribution over actions.
class JointPolicy {
 public:
  using Table = std::map<std::string, Eigen::VectorXd>;

  explicit JointPolicy(int player_count) : tables_(player_count) {}

  static JointPolicy uniform(const GameTree& tree);

  int player_count() const { return static_cast<int>(tables_.size()); }
  // Throws ConfigError identifying the key when the entry is missing.
  const Eigen::VectorXd& at(PlayerId p, const std::string& key) const;
  void set(PlayerId p, const std::string& key, Eigen::VectorXd probs);
  const Table& table(PlayerId p) const { return tables_[p]; }
  Table& table(PlayerId p) { return tables_[p]; }

  // Checks domain equality with the tree's infostate sets plus simplex
  // constraints on every vector. Throws ConfigError on violation.
  void validate_against(const GameTree& tree, double tol = 1e-9) const;

 private:
  std::vector<Table> tables_;
};

}  // namespace mdbench
