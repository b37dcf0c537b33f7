#include "mdbench/gmd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mdbench/errors.hpp"
#include "mdbench/game_ops.hpp"

namespace mdbench {

GmdConfig::GmdConfig() { alpha = Eigen::VectorXd::Ones(1); }

void GmdConfig::validate(int max_actions) const {
  if (history_len < 1) throw ConfigError("gmd history length must be >= 1");
  if (alpha.size() != history_len)
    throw ConfigError("gmd alpha must have one entry per historical policy");
  if (!(iota > 0.0 && iota < 1.0)) throw ConfigError("gmd iota must be in (0, 1)");
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < iota || alpha[i] > 1.0)
      throw ConfigError("gmd alpha entries must lie in [iota, 1]");
  }
  if (magnet_enabled && (alpha_magnet < iota || alpha_magnet > 1.0))
    throw ConfigError("gmd magnet weight must lie in [iota, 1]");
  if (!(epsilon > 0.0)) throw ConfigError("gmd epsilon must be positive");
  if (max_actions > 0 && epsilon >= 1.0 / max_actions)
    throw ConfigError("gmd epsilon must be below 1 / max action count");
  if (newton_iters < 1) throw ConfigError("gmd newton iteration count must be >= 1");
}

Eigen::VectorXd GmdConfig::packed_alpha() const {
  if (!magnet_enabled) return alpha;
  Eigen::VectorXd packed(history_len + 1);
  packed[0] = alpha_magnet;
  packed.tail(history_len) = alpha;
  return packed;
}

void GmdConfig::set_packed_alpha(const Eigen::VectorXd& packed) {
  if (packed.size() != packed_dim())
    throw ConfigError("packed alpha has the wrong dimension");
  if (magnet_enabled) {
    alpha_magnet = packed[0];
    alpha = packed.tail(history_len);
  } else {
    alpha = packed;
  }
}

void GmdEntry::push(Eigen::VectorXd policy, int max_len) {
  history.insert(history.begin(), std::move(policy));
  if (static_cast<int>(history.size()) > max_len)
    history.resize(static_cast<size_t>(max_len));
}

GmdState GmdState::init(const GameTree& tree, const JointPolicy& initial,
                        int history_len) {
  if (history_len < 1) throw ConfigError("gmd history length must be >= 1");
  GmdState state;
  state.entries.resize(tree.player_count());
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    for (const auto& [key, info] : tree.infostates(p)) {
      GmdEntry entry;
      const Eigen::VectorXd& pi1 = initial.at(p, key);
      if (pi1.minCoeff() <= 0.0)
        throw ConfigError("initial policy for \"" + key +
                          "\" must be strictly positive");
      entry.history.push_back(pi1);
      entry.magnet = pi1;
      state.entries[p][key] = std::move(entry);
    }
  }
  return state;
}

GmdEntry& GmdState::entry(PlayerId p, const std::string& key) {
  auto it = entries[p].find(key);
  if (it == entries[p].end())
    throw ConfigError("gmd state has no entry for infostate \"" + key + "\"");
  return it->second;
}

JointPolicy GmdState::current_joint() const {
  JointPolicy joint(static_cast<int>(entries.size()));
  for (PlayerId p = 0; p < static_cast<PlayerId>(entries.size()); ++p)
    for (const auto& [key, entry] : entries[p]) joint.set(p, key, entry.current());
  return joint;
}

KktSystem assemble_kkt(const Eigen::VectorXd& q,
                       const std::vector<Eigen::VectorXd>& history,
                       const Eigen::VectorXd& alpha,
                       const Eigen::VectorXd* magnet, double alpha_magnet,
                       const ConvexFamily& family) {
  if (history.empty()) throw ConfigError("assemble_kkt needs at least one policy");
  if (alpha.size() != static_cast<Eigen::Index>(history.size()))
    throw ConfigError("assemble_kkt weight count does not match the history");

  KktSystem sys;
  sys.a = q;
  sys.b = 0.0;
  auto add_policy = [&](const Eigen::VectorXd& policy, double weight) {
    if (policy.size() != q.size())
      throw ConfigError("assemble_kkt policy dimension mismatch");
    for (Eigen::Index i = 0; i < policy.size(); ++i) {
      if (policy[i] <= 0.0)
        throw std::domain_error(
            "assemble_kkt: historical policy has a zero entry");
      sys.a[i] += weight * psi_prime(family, policy[i]);
    }
    sys.b += weight;
  };
  for (size_t tau = 0; tau < history.size(); ++tau)
    add_policy(history[tau], alpha[static_cast<Eigen::Index>(tau)]);
  if (magnet != nullptr) add_policy(*magnet, alpha_magnet);
  return sys;
}

namespace {

// Inverse map extended for the solver: the power family pins out-of-domain
// arguments at zero probability (the water-filling branch of the KKT system),
// the exp family floors its argument at the smallest positive value so that
// steeply dominated actions come back as very negative raw probabilities.
// Entropy and negpower never leave their domains inside the bracket.
double inv_extended(const ConvexFamily& family, double y) {
  switch (family.kind()) {
    case ConvexKind::Power:
      return y <= 0.0 ? 0.0 : psi_prime_inv(family, y);
    case ConvexKind::Exp:
      return psi_prime_inv(family, std::max(y, 1e-300));
    case ConvexKind::NegPower:
      if (y >= 0.0) return std::numeric_limits<double>::infinity();
      return psi_prime_inv(family, y);
    case ConvexKind::NegEntropy:
      return psi_prime_inv(family, y);
  }
  return 0.0;
}

double inv_deriv_extended(const ConvexFamily& family, double y) {
  switch (family.kind()) {
    case ConvexKind::Power:
      return y <= 0.0 ? 0.0 : psi_prime_inv_deriv(family, y);
    case ConvexKind::Exp:
      return psi_prime_inv_deriv(family, std::max(y, 1e-300));
    case ConvexKind::NegPower:
      if (y >= 0.0) return std::numeric_limits<double>::infinity();
      return psi_prime_inv_deriv(family, y);
    case ConvexKind::NegEntropy:
      return psi_prime_inv_deriv(family, y);
  }
  return 0.0;
}

}  // namespace

DualSolution solve_dual(const Eigen::VectorXd& a, double b,
                        const ConvexFamily& family, double floor, int iters,
                        double tol, const double* warm_t, Rng* rng) {
  if (!(b > 0.0)) throw SolverError("solve_dual needs B > 0");
  if (a.size() < 1) throw SolverError("solve_dual needs a nonempty A");
  if (!a.allFinite()) throw SolverError("solve_dual needs finite A");
  if (floor < 0.0) throw SolverError("solve_dual needs a nonnegative floor");
  const int n = static_cast<int>(a.size());

  // Shifted coordinates: arg_i = d_i + t with d_i >= 0. The minimizing
  // coordinate's argument equals t exactly, so the solve stays accurate when
  // lambda would cancel against A.min().
  const double a_min = a.minCoeff();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d[i] = (a[i] - a_min) / b;

  // The sum is increasing in t: at t = psi'(1) every implied probability is
  // at least 1; at the low end every one is at most eps_b.
  const double eps_b = std::min(std::max(floor, 1e-12), 0.5 / n);
  double lo = psi_prime(family, eps_b) - d.maxCoeff();
  double hi = psi_prime(family, 1.0);

  auto value_at = [&](double t, int i) {
    const double raw = inv_extended(family, d[i] + t);
    return floor > 0.0 ? std::max(floor, raw) : raw;
  };
  auto g = [&](double t) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += value_at(t, i);
    return sum - 1.0;
  };
  auto g_prime = [&](double t) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      if (floor > 0.0 && inv_extended(family, d[i] + t) < floor) continue;
      sum += inv_deriv_extended(family, d[i] + t);
    }
    return sum;
  };

  double t;
  if (warm_t != nullptr && *warm_t > lo && *warm_t < hi) {
    t = *warm_t;
  } else if (rng != nullptr) {
    t = rng->uniform(lo, hi);
  } else {
    // Deterministic start: the best action's implied probability is 1/n,
    // which is in-domain for every family.
    t = std::clamp(psi_prime(family, 1.0 / n) - d.maxCoeff(), lo, hi);
  }

  double best_t = t;
  double best_abs = std::numeric_limits<double>::infinity();
  int newton_left = iters;
  // Newton with bracket safeguarding; the extra bisection budget bounds the
  // worst case while the bracket collapses geometrically.
  for (int step = 0; step < iters + 200; ++step) {
    const double value = g(t);
    if (std::isfinite(value)) {
      if (std::abs(value) < best_abs) {
        best_abs = std::abs(value);
        best_t = t;
      }
      if (std::abs(value) <= tol) break;
      if (value > 0.0) {
        hi = std::min(hi, t);
      } else {
        lo = std::max(lo, t);
      }
    } else {
      // Infinite sum: t is too large for the negpower domain; move down.
      hi = std::min(hi, t);
    }

    double next = std::numeric_limits<double>::quiet_NaN();
    if (newton_left > 0 && std::isfinite(value)) {
      const double slope = g_prime(t);
      if (std::isfinite(slope) && std::abs(slope) >= 1e-14) {
        next = t - value / slope;
        --newton_left;
      }
    }
    if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
    if (next == t) break;  // bracket exhausted at floating-point resolution
    t = next;
  }

  if (best_abs > tol) {
    std::ostringstream diag;
    diag << "solve_dual failed to converge: family=" << family.to_string()
         << " B=" << b << " floor=" << floor << " residual=" << best_abs
         << " bracket=[" << lo << ", " << hi << "] A=[";
    for (int i = 0; i < n; ++i) diag << (i ? ", " : "") << a[i];
    diag << "]";
    throw SolverError(diag.str());
  }

  DualSolution solution;
  solution.t = best_t;
  solution.lambda = a_min - b * best_t;
  solution.policy.resize(n);
  for (int i = 0; i < n; ++i) solution.policy[i] = value_at(best_t, i);
  solution.residual = std::abs(solution.policy.sum() - 1.0);
  return solution;
}

double newton_lambda(const Eigen::VectorXd& a, double b, const ConvexFamily& family,
                     int iters, double tol, double projection_epsilon,
                     const double* warm_start, Rng* rng) {
  (void)projection_epsilon;
  return solve_dual(a, b, family, 0.0, iters, tol, warm_start, rng).lambda;
}

Eigen::VectorXd raw_policy(const Eigen::VectorXd& a, double b, double lambda,
                           const ConvexFamily& family) {
  Eigen::VectorXd pi(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    pi[i] = inv_extended(family, (a[i] - lambda) / b);
  return pi;
}

Eigen::VectorXd project(const Eigen::VectorXd& raw, double epsilon) {
  Eigen::VectorXd clipped = raw.cwiseMax(epsilon);
  return clipped / clipped.sum();
}

Eigen::VectorXd gmd_step(GmdEntry& entry, const Eigen::VectorXd& q,
                         const GmdConfig& config, Rng* rng) {
  if (entry.history.empty())
    throw ConfigError("gmd_step needs an initialized history buffer");

  const int available = static_cast<int>(entry.history.size());
  Eigen::VectorXd weights;
  double magnet_weight = config.alpha_magnet;
  if (available < config.history_len) {
    // Warm-up: uniform weight over the k available policies.
    weights = Eigen::VectorXd::Constant(available, 1.0 / available);
    if (config.magnet_enabled) magnet_weight = 1.0 / available;
  } else {
    weights = config.alpha;
  }

  KktSystem sys = assemble_kkt(q, entry.history, weights,
                               config.magnet_enabled ? &entry.magnet : nullptr,
                               magnet_weight, config.family);
  const double* warm = entry.has_warm_dual ? &entry.warm_dual : nullptr;
  DualSolution solution =
      solve_dual(sys.a, sys.b, config.family, config.epsilon,
                 config.newton_iters, config.newton_tol, warm,
                 config.newton_random_init ? rng : nullptr);
  entry.warm_dual = solution.t;
  entry.has_warm_dual = true;

  Eigen::VectorXd next = project(solution.policy, config.epsilon);
  entry.push(next, config.history_len);
  return next;
}

JointPolicy gmd_update(const GameTree& tree, const JointPolicy& joint,
                       GmdState& state, const GmdConfig& config, Rng* rng) {
  JointPolicy next(tree.player_count());
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    const std::map<std::string, Eigen::VectorXd> q = q_values(tree, joint, p);
    for (const auto& [key, q_vec] : q)
      next.set(p, key, gmd_step(state.entry(p, key), q_vec, config, rng));
  }
  state.iteration += 1;
  return next;
}

}  // namespace mdbench
