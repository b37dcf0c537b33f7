#pragma once

#include <Eigen/Core>

#include "mdbench/game_tree.hpp"

namespace mdbench {

struct MmdConfig {
  double xi = 1.0;          // magnet regularization intensity
  double eta = 0.1;         // step size
  double eta_tilde = 0.05;  // magnet step size
  double zeta = 1e-10;      // division guard in the EU projection

  void validate() const;
};

// Squared-Euclidean proximal step with a magnet: closed form with the mean
// action value as the dual, followed by a clip-and-renormalize projection.
Eigen::VectorXd mmd_eu_step(const Eigen::VectorXd& q, const Eigen::VectorXd& pi,
                            const Eigen::VectorXd& rho, const MmdConfig& config);

// KL proximal step with a magnet:
// pi'(a) proportional to exp[(Q(a) + xi ln rho(a) + ln pi(a)/eta)/(xi + 1/eta)].
Eigen::VectorXd mmd_kl_step(const Eigen::VectorXd& q, const Eigen::VectorXd& pi,
                            const Eigen::VectorXd& rho, const MmdConfig& config);

// rho <- (1 - eta_tilde) rho + eta_tilde pi_new.
Eigen::VectorXd magnet_update(const Eigen::VectorXd& rho,
                              const Eigen::VectorXd& pi_new, double eta_tilde);

enum class MmdVariant { Kl, Eu };

struct MmdState {
  JointPolicy joint;
  JointPolicy magnet;

  static MmdState init(const GameTree& tree);
};

// One synchronous update of every decision point, then the magnet update.
void mmd_update(const GameTree& tree, MmdState& state, MmdVariant variant,
                const MmdConfig& config);

}  // namespace mdbench
