#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>

#include "mdbench/game_tree.hpp"
#include "mdbench/gmd.hpp"
#include "mdbench/rng.hpp"

namespace mdbench {

enum class McKind { Drs, Rs, Gld, Glds, Dglds };

McKind parse_mc_kind(const std::string& name);
std::string mc_kind_name(McKind kind);

struct McConfig {
  McKind kind = McKind::Drs;
  int samples = 5;    // D
  int interval = 10;  // kappa, update alpha every kappa iterations
  double mu = 0.05;   // perturbation radius for DRS/RS
  double r_low = 0.01, r_high = 0.05;  // sphere radius range for the GLD family
  double iota = 1e-6;

  void validate() const;
};

// Three-way sign.
int sgn(double z);

// Element-wise clip to [iota, 1].
double clip_unit(double z, double iota);
Eigen::VectorXd clip_unit(Eigen::VectorXd z, double iota);

struct McUpdate {
  Eigen::VectorXd alpha;
  int evaluations = 0;
  bool ok = true;  // false when a candidate evaluation failed; alpha unchanged
};

// One zero-order update of the hyper-parameter vector. evaluate_candidate
// must be pure over a fixed snapshot of the learner state; current_loss
// supplies the present policy's measure for the GLDS/DGLDS baselines. All
// perturbations are sampled before any evaluation.
McUpdate mc_update(McKind kind, const Eigen::VectorXd& alpha,
                   const std::function<double(const Eigen::VectorXd&)>& evaluate_candidate,
                   const std::function<double()>& current_loss,
                   const McConfig& config, Rng& rng);

// One outer iteration (1-based k): warm-up weights for k <= M, a controller
// update every interval iterations afterwards, then one committed update.
// gmd_config.alpha/alpha_magnet carry the evolving hyper-parameters.
JointPolicy cmd_iteration(const GameTree& tree, const JointPolicy& joint,
                          GmdState& state, GmdConfig& gmd_config,
                          const McConfig& mc_config,
                          const std::function<double(const JointPolicy&)>& loss,
                          long k, Rng& rng);

}  // namespace mdbench
