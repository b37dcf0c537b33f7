#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mdbench/bregman.hpp"
#include "mdbench/game_tree.hpp"
#include "mdbench/rng.hpp"

namespace mdbench {

struct GmdConfig {
  ConvexFamily family = ConvexFamily::neg_entropy();
  int history_len = 1;     // M, number of historical policies
  Eigen::VectorXd alpha;   // size M; alpha[tau] weights pi_{k-tau}
  bool magnet_enabled = false;
  double alpha_magnet = 1.0;
  double epsilon = 1e-10;  // probability floor used by the projection
  double iota = 1e-6;      // lower bound for every alpha entry
  int newton_iters = 50;   // C
  double newton_tol = 1e-8;
  bool newton_random_init = false;  // draw lambda_0 from the bracket instead

  GmdConfig();
  void validate(int max_actions) const;

  // The controllable vector seen by the meta-controller: [magnet, tau 0..M-1]
  // when the magnet is enabled, otherwise just the history weights.
  Eigen::VectorXd packed_alpha() const;
  void set_packed_alpha(const Eigen::VectorXd& packed);
  int packed_dim() const { return history_len + (magnet_enabled ? 1 : 0); }
};

// Per-infostate solver state: the most recent policies (newest first), the
// fixed magnet policy, and the previous dual solution for warm starts.
struct GmdEntry {
  std::vector<Eigen::VectorXd> history;
  Eigen::VectorXd magnet;
  double warm_dual = 0.0;  // previous shifted dual (see solve_dual)
  bool has_warm_dual = false;

  const Eigen::VectorXd& current() const { return history.front(); }
  void push(Eigen::VectorXd policy, int max_len);
};

struct GmdState {
  std::vector<std::map<std::string, GmdEntry>> entries;  // per player
  long iteration = 0;  // committed updates so far

  static GmdState init(const GameTree& tree, const JointPolicy& initial,
                       int history_len);
  GmdEntry& entry(PlayerId p, const std::string& key);
  JointPolicy current_joint() const;
};

struct KktSystem {
  Eigen::VectorXd a;
  double b = 0.0;
};

// A = Q + sum_tau alpha[tau] psi'(history[tau]) (+ magnet term), B = sum of
// the weights. History runs newest first; weights must align with it.
KktSystem assemble_kkt(const Eigen::VectorXd& q,
                       const std::vector<Eigen::VectorXd>& history,
                       const Eigen::VectorXd& alpha,
                       const Eigen::VectorXd* magnet, double alpha_magnet,
                       const ConvexFamily& family);

struct DualSolution {
  double lambda = 0.0;   // A.min() - B * t
  double t = 0.0;        // shifted dual, (A.min() - lambda) / B
  Eigen::VectorXd policy;  // implied probabilities at the solution
  double residual = 0.0;   // |sum(policy) - 1|
};

// Solves sum_a max{floor, inv(psi')((A(a) - lambda)/B)} = 1 by safeguarded
// Newton with a bisection fallback. The solve runs in the shifted variable
// t = (A.min() - lambda)/B, which keeps the smallest coordinate's argument
// exact even when lambda itself is not representable. floor = 0 gives the
// plain dual equation; floor = epsilon gives the probability-floored KKT
// system whose solution maximizes the proximal objective over the floored
// simplex. Throws SolverError with diagnostics on non-convergence.
DualSolution solve_dual(const Eigen::VectorXd& a, double b,
                        const ConvexFamily& family, double floor, int iters,
                        double tol, const double* warm_t = nullptr,
                        Rng* rng = nullptr);

// Dual variable of the unfloored equation; see solve_dual.
double newton_lambda(const Eigen::VectorXd& a, double b, const ConvexFamily& family,
                     int iters, double tol, double projection_epsilon,
                     const double* warm_start = nullptr, Rng* rng = nullptr);

// Elementwise inverse-map application. Entries can be nonpositive for the
// exp family or pinned at zero for the power family; the projection cleans
// those up.
Eigen::VectorXd raw_policy(const Eigen::VectorXd& a, double b, double lambda,
                           const ConvexFamily& family);

// max{epsilon, pi(a)} followed by exact normalization.
Eigen::VectorXd project(const Eigen::VectorXd& raw, double epsilon);

// One proximal step at a single decision point; appends the result to the
// entry's ring buffer.
Eigen::VectorXd gmd_step(GmdEntry& entry, const Eigen::VectorXd& q,
                         const GmdConfig& config, Rng* rng = nullptr);

// One synchronous update of every decision point of every player. All steps
// read the same pre-update joint policy.
JointPolicy gmd_update(const GameTree& tree, const JointPolicy& joint,
                       GmdState& state, const GmdConfig& config,
                       Rng* rng = nullptr);

}  // namespace mdbench
