#include "mdbench/mmd.hpp"

#include <cmath>

#include "mdbench/errors.hpp"
#include "mdbench/game_ops.hpp"

namespace mdbench {

void MmdConfig::validate() const {
  if (!(xi > 0.0)) throw ConfigError("mmd xi must be positive");
  if (!(eta > 0.0)) throw ConfigError("mmd eta must be positive");
  if (!(eta_tilde > 0.0 && eta_tilde <= 1.0))
    throw ConfigError("mmd eta_tilde must be in (0, 1]");
  if (!(zeta > 0.0)) throw ConfigError("mmd zeta must be positive");
}

Eigen::VectorXd mmd_eu_step(const Eigen::VectorXd& q, const Eigen::VectorXd& pi,
                            const Eigen::VectorXd& rho, const MmdConfig& config) {
  const double lambda = q.mean();
  const double denom = config.xi + 1.0 / config.eta;
  Eigen::VectorXd raw =
      (config.xi * rho + pi / config.eta + q -
       Eigen::VectorXd::Constant(q.size(), lambda)) /
      denom;
  // Clip negatives and renormalize. zeta only guards the degenerate case
  // where everything clips away; engaging it unconditionally would bias every
  // output by ~zeta.
  Eigen::VectorXd clipped = raw.cwiseMax(0.0);
  double sum = clipped.sum();
  if (sum <= config.zeta) {
    clipped.array() += config.zeta;
    sum = clipped.sum();
  }
  return clipped / sum;
}

Eigen::VectorXd mmd_kl_step(const Eigen::VectorXd& q, const Eigen::VectorXd& pi,
                            const Eigen::VectorXd& rho, const MmdConfig& config) {
  const double denom = config.xi + 1.0 / config.eta;
  Eigen::VectorXd logits(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (pi[i] <= 0.0 || rho[i] <= 0.0)
      throw std::domain_error("mmd_kl_step needs strictly positive policies");
    logits[i] =
        (q[i] + config.xi * std::log(rho[i]) + std::log(pi[i]) / config.eta) /
        denom;
  }
  const double shift = logits.maxCoeff();
  Eigen::VectorXd out = (logits.array() - shift).exp();
  return out / out.sum();
}

Eigen::VectorXd magnet_update(const Eigen::VectorXd& rho,
                              const Eigen::VectorXd& pi_new, double eta_tilde) {
  return (1.0 - eta_tilde) * rho + eta_tilde * pi_new;
}

MmdState MmdState::init(const GameTree& tree) {
  JointPolicy uniform = JointPolicy::uniform(tree);
  return MmdState{uniform, uniform};
}

void mmd_update(const GameTree& tree, MmdState& state, MmdVariant variant,
                const MmdConfig& config) {
  JointPolicy next(tree.player_count());
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    const std::map<std::string, Eigen::VectorXd> q = q_values(tree, state.joint, p);
    for (const auto& [key, q_vec] : q) {
      const Eigen::VectorXd& pi = state.joint.at(p, key);
      const Eigen::VectorXd& rho = state.magnet.at(p, key);
      Eigen::VectorXd stepped = variant == MmdVariant::Kl
                                    ? mmd_kl_step(q_vec, pi, rho, config)
                                    : mmd_eu_step(q_vec, pi, rho, config);
      next.set(p, key, std::move(stepped));
    }
  }
  for (PlayerId p = 0; p < tree.player_count(); ++p) {
    for (auto& [key, rho] : state.magnet.table(p))
      rho = magnet_update(rho, next.at(p, key), config.eta_tilde);
  }
  state.joint = std::move(next);
}

}  // namespace mdbench
