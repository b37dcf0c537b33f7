#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mdbench/game_ops.hpp"

namespace mdbench::oracle {

namespace {

struct PathEdge {
  int node;
  int branch;
  double prob;       // branch probability (1.0 on the chosen action itself)
  PlayerId owner;    // -1 for chance
};

struct Path {
  std::vector<PathEdge> edges;
  Eigen::VectorXd payoffs;
};

void enumerate_paths(const GameTree& tree, const JointPolicy& joint, int id,
                     std::vector<PathEdge>& stack, std::vector<Path>& out) {
  const Node& n = tree.node(id);
  switch (n.kind) {
    case NodeKind::Terminal:
      out.push_back({stack, n.payoffs});
      return;
    case NodeKind::Chance:
      for (size_t i = 0; i < n.outcomes.size(); ++i) {
        stack.push_back({id, static_cast<int>(i), n.outcomes[i].prob, -1});
        enumerate_paths(tree, joint, n.outcomes[i].child, stack, out);
        stack.pop_back();
      }
      return;
    case NodeKind::Decision: {
      const Eigen::VectorXd& probs = joint.at(n.player, n.infostate);
      for (size_t i = 0; i < n.actions.size(); ++i) {
        stack.push_back({id, static_cast<int>(i),
                         probs[static_cast<Eigen::Index>(i)], n.player});
        enumerate_paths(tree, joint, n.actions[i].child, stack, out);
        stack.pop_back();
      }
      return;
    }
  }
}

std::vector<Path> all_paths(const GameTree& tree, const JointPolicy& joint) {
  std::vector<Path> out;
  std::vector<PathEdge> stack;
  enumerate_paths(tree, joint, tree.root(), stack, out);
  return out;
}

}  // namespace

Eigen::VectorXd paths_expected_values(const GameTree& tree, const JointPolicy& joint) {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(tree.player_count());
  for (const Path& path : all_paths(tree, joint)) {
    double prob = 1.0;
    for (const PathEdge& e : path.edges) prob *= e.prob;
    total += prob * path.payoffs;
  }
  return total;
}

std::map<std::string, Eigen::VectorXd> paths_q_values(const GameTree& tree,
                                                      const JointPolicy& joint,
                                                      PlayerId player) {
  std::map<std::string, Eigen::VectorXd> q;
  for (const auto& [key, info] : tree.infostates(player))
    q[key] = Eigen::VectorXd::Zero(info.num_actions);

  for (const Path& path : all_paths(tree, joint)) {
    for (size_t pivot = 0; pivot < path.edges.size(); ++pivot) {
      const PathEdge& edge = path.edges[pivot];
      if (edge.owner != player) continue;
      // Weight: every edge probability except the player's own at or above
      // the pivot.
      double weight = 1.0;
      for (size_t i = 0; i < path.edges.size(); ++i) {
        const PathEdge& e = path.edges[i];
        if (e.owner == player && i <= pivot) continue;
        weight *= e.prob;
      }
      const Node& n = tree.node(edge.node);
      q[n.infostate][edge.branch] += weight * path.payoffs[player];
    }
  }
  return q;
}

double enumerate_best_response_value(const GameTree& tree, const JointPolicy& joint,
                                     PlayerId player) {
  std::vector<std::pair<std::string, int>> slots;
  double combos = 1.0;
  for (const auto& [key, info] : tree.infostates(player)) {
    slots.push_back({key, info.num_actions});
    combos *= info.num_actions;
  }
  if (combos > 2e6) throw std::runtime_error("best-response enumeration too large");

  JointPolicy trial = joint;
  std::vector<int> choice(slots.size(), 0);
  auto apply = [&]() {
    for (size_t i = 0; i < slots.size(); ++i) {
      Eigen::VectorXd one_hot = Eigen::VectorXd::Zero(slots[i].second);
      one_hot[choice[i]] = 1.0;
      trial.set(player, slots[i].first, std::move(one_hot));
    }
  };
  double best = -std::numeric_limits<double>::infinity();
  while (true) {
    apply();
    best = std::max(best, paths_expected_values(tree, trial)[player]);
    size_t i = 0;
    for (; i < slots.size(); ++i) {
      choice[i] = (choice[i] + 1) % slots[i].second;
      if (choice[i] != 0) break;
    }
    if (i == slots.size()) break;
  }
  return best;
}

TeamEnumeration enumerate_team_best_response(const GameTree& tree,
                                             const JointPolicy& joint,
                                             PlayerId member_a, PlayerId member_b) {
  std::vector<std::pair<std::string, int>> slots;
  double combos = 1.0;
  for (const auto& [key, info] : tree.infostates(member_a)) {
    slots.push_back({key, info.num_actions});
    combos *= info.num_actions;
  }
  if (combos > 1e6) throw std::runtime_error("team enumeration too large");

  JointPolicy trial = joint;
  std::vector<int> choice(slots.size(), 0);
  TeamEnumeration best;
  best.value = -std::numeric_limits<double>::infinity();
  while (true) {
    for (size_t i = 0; i < slots.size(); ++i) {
      Eigen::VectorXd one_hot = Eigen::VectorXd::Zero(slots[i].second);
      one_hot[choice[i]] = 1.0;
      trial.set(member_a, slots[i].first, std::move(one_hot));
    }
    // Shared payoffs make member b's counterfactual best response the team
    // optimum for this fixed policy of member a.
    BestResponse br = best_response(tree, trial, member_b);
    if (br.value > best.value) {
      best.value = br.value;
      best.policy_a = trial.table(member_a);
      best.policy_b = std::move(br.policy);
    }
    size_t i = 0;
    for (; i < slots.size(); ++i) {
      choice[i] = (choice[i] + 1) % slots[i].second;
      if (choice[i] != 0) break;
    }
    if (i == slots.size()) break;
  }
  return best;
}

Eigen::VectorXd quadratic_simplex_max(const Eigen::VectorXd& q,
                                      const std::vector<double>& coeffs,
                                      const std::vector<Eigen::VectorXd>& anchors) {
  const int n = static_cast<int>(q.size());
  if (coeffs.size() != anchors.size())
    throw std::runtime_error("coeffs/anchors size mismatch");
  // f(x) = <q, x> - sum_j c_j ||x - y_j||^2 = <b, x> - c <x, x> + const.
  double c = 0.0;
  Eigen::VectorXd b = q;
  for (size_t j = 0; j < coeffs.size(); ++j) {
    c += coeffs[j];
    b += 2.0 * coeffs[j] * anchors[j];
  }
  if (c <= 0.0) throw std::runtime_error("need a positive quadratic coefficient");

  auto objective = [&](const Eigen::VectorXd& x) {
    double f = q.dot(x);
    for (size_t j = 0; j < coeffs.size(); ++j)
      f -= coeffs[j] * (x - anchors[j]).squaredNorm();
    return f;
  };

  double best_value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best = Eigen::VectorXd::Constant(n, 1.0 / n);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    int size = 0;
    double b_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        ++size;
        b_sum += b[i];
      }
    }
    const double lambda = (b_sum - 2.0 * c) / size;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    bool feasible = true;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        x[i] = (b[i] - lambda) / (2.0 * c);
        if (x[i] < -1e-12) feasible = false;
      }
    }
    if (!feasible) continue;
    x = x.cwiseMax(0.0);
    x /= x.sum();
    const double value = objective(x);
    if (value > best_value) {
      best_value = value;
      best = x;
    }
  }
  return best;
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v) {
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumulative = 0.0;
  double theta = 0.0;
  int rho = 0;
  for (int i = 0; i < n; ++i) {
    cumulative += u[i];
    const double candidate = (cumulative - 1.0) / (i + 1);
    if (u[i] - candidate > 0.0) {
      rho = i + 1;
      theta = candidate;
    }
  }
  (void)rho;
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

Eigen::VectorXd pgd_simplex_max(int n, const std::function<double(const Eigen::VectorXd&)>& f,
                                const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& grad,
                                int iters) {
  constexpr double kFloor = 1e-12;
  auto interior = [&](Eigen::VectorXd x) {
    x = x.cwiseMax(kFloor);
    return Eigen::VectorXd(x / x.sum());
  };
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
  double fx = f(x);
  double step = 0.5;
  for (int it = 0; it < iters; ++it) {
    const Eigen::VectorXd g = grad(x);
    bool improved = false;
    double local = step;
    for (int tries = 0; tries < 60; ++tries) {
      Eigen::VectorXd candidate = interior(project_simplex(x + local * g));
      const double fc = f(candidate);
      if (fc > fx) {
        x = std::move(candidate);
        fx = fc;
        improved = true;
        break;
      }
      local *= 0.5;
    }
    if (improved) {
      step = std::min(local * 2.0, 1e3);
    } else {
      break;  // no ascent direction left at floating-point resolution
    }
  }
  return x;
}

double entropy_dual_bisection(const Eigen::VectorXd& a, double b, double tol) {
  auto sum = [&](double lambda) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
      s += std::exp((a[i] - lambda) / b - 1.0);
    return s;
  };
  double lo = a.minCoeff() - b * 50.0;
  double hi = a.maxCoeff() + b * 50.0;
  while (sum(lo) < 1.0) lo -= b * 50.0;
  while (sum(hi) > 1.0) hi += b * 50.0;
  for (int i = 0; i < 500 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (sum(mid) > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd random_simplex(Rng& rng, int n, double floor) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    x[i] = -std::log(u);
  }
  x /= x.sum();
  if (floor > 0.0) {
    x = x.cwiseMax(floor);
    x /= x.sum();
  }
  return x;
}

JointPolicy random_joint_policy(const GameTree& tree, Rng& rng, double floor) {
  JointPolicy joint(tree.player_count());
  for (PlayerId p = 0; p < tree.player_count(); ++p)
    for (const auto& [key, info] : tree.infostates(p))
      joint.set(p, key, random_simplex(rng, info.num_actions, floor));
  return joint;
}

std::string matching_pennies_text() {
  return R"(# matching pennies, player 1 wins on a match
game matching_pennies players 2
node t_hh terminal [ 1 -1 ]
node t_ht terminal [ -1 1 ]
node t_th terminal [ -1 1 ]
node t_tt terminal [ 1 -1 ]
root r
node r player 1 infostate "p1" { heads -> h tails -> t }
node h player 2 infostate "p2" { heads -> t_hh tails -> t_ht }
node t player 2 infostate "p2" { heads -> t_th tails -> t_tt }
)";
}

}  // namespace mdbench::oracle
