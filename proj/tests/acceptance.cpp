// Acceptance suite: one self-contained check per criterion, each printed as a
// single PASS/FAIL line with the measured quantities. Exits nonzero if any
// check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "mdbench/bregman.hpp"
#include "mdbench/cfr.hpp"
#include "mdbench/game_file.hpp"
#include "mdbench/game_ops.hpp"
#include "mdbench/games.hpp"
#include "mdbench/gmd.hpp"
#include "mdbench/harness.hpp"
#include "mdbench/measures.hpp"
#include "mdbench/meta_controller.hpp"
#include "oracles.hpp"

using namespace mdbench;

namespace {

struct Checker {
  bool all_ok = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      all_ok = false;
      detail << (detail.str().empty() ? "" : "; ") << what;
    }
  }
};

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --------------------------------------------------------------------------

bool criterion_decision_points(std::string& detail) {
  Checker check;
  const std::vector<std::pair<std::string, int>> expected = {
      {"single_agent_kuhn_a", 6}, {"single_agent_kuhn_b", 6},
      {"tiny_hanabi_a", 8},       {"tiny_hanabi_b", 6},
      {"tiny_hanabi_c", 6},       {"kuhn_poker:players=3", 48},
      {"leduc_poker", 936},       {"mcc_kuhn_a", 48},
      {"mcc_kuhn_b", 48}};
  std::ostringstream counts;
  for (const auto& [name, want] : expected) {
    const auto t0 = std::chrono::steady_clock::now();
    BuiltGame game = make_builtin(GameSpec::parse(name));
    const int got = count_decision_points(game.tree).total;
    const double secs = elapsed_since(t0);
    counts << " " << name << "=" << got;
    check.require(got == want, name + " expected " + std::to_string(want) +
                                   " got " + std::to_string(got));
    check.require(secs < 1.0, name + " took " + std::to_string(secs) + "s");
  }
  detail = "counts:" + counts.str();
  if (!check.all_ok) detail += "; " + check.detail.str();
  return check.all_ok;
}

bool criterion_newton_kkt(std::string& detail) {
  Checker check;
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<ConvexFamily> families = {
      ConvexFamily::neg_entropy(), ConvexFamily::power(2.0),
      ConvexFamily::neg_power(0.1), ConvexFamily::exponential(1.0)};
  Rng rng(2024);
  double worst_residual = 0.0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (const ConvexFamily& family : families) {
    for (int trial = 0; trial < 1000; ++trial) {
      const int n = 2 + static_cast<int>(rng.uniform() * 4);
      const int m = 1 + static_cast<int>(rng.uniform() * 5);
      Eigen::VectorXd q(n);
      for (int i = 0; i < n; ++i) q[i] = rng.uniform(-2.0, 2.0);
      std::vector<Eigen::VectorXd> history;
      Eigen::VectorXd alpha(m);
      for (int tau = 0; tau < m; ++tau) {
        history.push_back(oracle::random_simplex(rng, n, 1e-4));
        alpha[tau] = rng.uniform(1e-6, 1.0);
      }
      KktSystem sys = assemble_kkt(q, history, alpha, nullptr, 0.0, family);
      DualSolution solution = solve_dual(sys.a, sys.b, family, 1e-10, 50, 1e-8);
      worst_residual = std::max(worst_residual, solution.residual);

      auto objective = [&](const Eigen::VectorXd& x) {
        double f = q.dot(x);
        for (int tau = 0; tau < m; ++tau)
          f -= alpha[tau] * bregman_div(family, x, history[tau]);
        return f;
      };
      const double got = objective(project(solution.policy, 1e-10));
      for (int point = 0; point < 200; ++point) {
        const double other = objective(oracle::random_simplex(rng, n));
        worst_margin = std::min(worst_margin, got - other);
      }
    }
  }
  const double secs = elapsed_since(t0);
  check.require(worst_residual <= 1e-8, "residual " + std::to_string(worst_residual));
  check.require(worst_margin >= -1e-6, "objective margin " + std::to_string(worst_margin));
  check.require(secs < 30.0, "runtime " + std::to_string(secs) + "s");
  std::ostringstream out;
  out << "worst residual " << worst_residual << ", worst objective margin "
      << worst_margin << ", " << secs << "s";
  detail = out.str();
  if (!check.all_ok) detail += "; " + check.detail.str();
  return check.all_ok;
}

bool criterion_closed_forms(std::string& detail) {
  Checker check;
  Rng rng(7);
  double worst_entropy = 0.0;
  {
    GmdConfig config;
    config.family = ConvexFamily::neg_entropy();
    config.history_len = 1;
    config.alpha = Eigen::VectorXd::Ones(1);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.uniform() * 4);
      Eigen::VectorXd pi = oracle::random_simplex(rng, n, 1e-4);
      Eigen::VectorXd q(n);
      for (int i = 0; i < n; ++i) q[i] = rng.uniform(-3.0, 3.0);
      GmdEntry entry;
      entry.history = {pi};
      entry.magnet = pi;
      Eigen::VectorXd got = gmd_step(entry, q, config);
      Eigen::VectorXd want = pi.array() * q.array().exp();
      want /= want.sum();
      worst_entropy = std::max(worst_entropy, (got - want).cwiseAbs().maxCoeff());
    }
    check.require(worst_entropy <= 1e-7,
                  "entropy closed form off by " + std::to_string(worst_entropy));
  }
  double worst_euclidean = 0.0;
  {
    GmdConfig config;
    config.family = ConvexFamily::power(2.0);
    config.history_len = 1;
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 2 + static_cast<int>(rng.uniform() * 4);
      Eigen::VectorXd pi = oracle::random_simplex(rng, n, 1e-3);
      Eigen::VectorXd q(n);
      for (int i = 0; i < n; ++i) q[i] = rng.uniform(-1.0, 1.0);
      const double weight = rng.uniform(0.2, 1.0);
      config.alpha = Eigen::VectorXd::Constant(1, weight);
      GmdEntry entry;
      entry.history = {pi};
      entry.magnet = pi;
      Eigen::VectorXd got = gmd_step(entry, q, config);
      Eigen::VectorXd want = oracle::quadratic_simplex_max(q, {weight}, {pi});
      worst_euclidean = std::max(worst_euclidean, (got - want).cwiseAbs().maxCoeff());
    }
    check.require(worst_euclidean <= 1e-6,
                  "euclidean proximal step off by " + std::to_string(worst_euclidean));
  }
  std::ostringstream out;
  out << "entropy max err " << worst_entropy << ", euclidean max err "
      << worst_euclidean;
  detail = out.str();
  if (!check.all_ok) detail += "; " + check.detail.str();
  return check.all_ok;
}

bool criterion_mmd_eu(std::string& detail) {
  Checker check;
  MmdConfig config;
  Eigen::VectorXd uniform(2), q(2);
  uniform << 0.5, 0.5;
  q << 1.0, 0.0;
  Eigen::VectorXd hand = mmd_eu_step(q, uniform, uniform, config);
  check.require(std::abs(hand[0] - 6.0 / 11.0) <= 1e-12 &&
                    std::abs(hand[1] - 5.0 / 11.0) <= 1e-12,
                "hand example mismatch");

  Rng rng(12);
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    Eigen::VectorXd qv(n);
    for (int i = 0; i < n; ++i) qv[i] = rng.uniform(-1.0, 1.0);
    Eigen::VectorXd pi = oracle::random_simplex(rng, n, 0.05);
    Eigen::VectorXd rho = oracle::random_simplex(rng, n, 0.05);
    Eigen::VectorXd got = mmd_eu_step(qv, pi, rho, config);
    if (got.minCoeff() <= 1e-9) continue;  // stay in the interior regime
    Eigen::VectorXd want = oracle::quadratic_simplex_max(
        qv, {config.xi / 2.0, 1.0 / (2.0 * config.eta)}, {rho, pi});
    worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
    ++done;
  }
  check.require(worst <= 1e-6, "oracle mismatch " + std::to_string(worst));
  std::ostringstream out;
  out << "hand example exact, oracle max err " << worst;
  detail = out.str();
  if (!check.all_ok) detail += "; " + check.detail.str();
  return check.all_ok;
}

bool criterion_competitive(std::string& detail) {
  Checker check;
  const auto t0 = std::chrono::steady_clock::now();
  RunResult cmd = run(ExperimentConfig::from_string(
      "game = kuhn_poker\nalgorithm = cmd\nmeasure = nashconv\n"
      "iterations = 50000\neval_every = 100\nseed = 0\n"));
  double min10k = std::numeric_limits<double>::infinity();
  double min50k = std::numeric_limits<double>::infinity();
  for (const IterationRecord& rec : cmd.records) {
    if (rec.iteration <= 10000) min10k = std::min(min10k, rec.measure_value);
    min50k = std::min(min50k, rec.measure_value);
  }
  check.require(min10k < 0.05, "cmd nashconv by 10k = " + std::to_string(min10k));
  check.require(min50k < 0.02, "cmd nashconv by 50k = " + std::to_string(min50k));

  RunResult cfr_plus = run(ExperimentConfig::from_string(
      "game = kuhn_poker\nalgorithm = cfr_plus\nmeasure = nashconv\n"
      "iterations = 1000\neval_every = 100\nseed = 0\n"));
  const double cfr_final = cfr_plus.records.back().measure_value;
  check.require(cfr_final < 0.01, "cfr+ nashconv = " + std::to_string(cfr_final));

  const double secs = elapsed_since(t0);
  check.require(secs < 600.0, "runtime " + std::to_string(secs) + "s");
  std::ostringstream out;
  out << "cmd reaches " << min10k << " by 10k and " << min50k << " by 50k; cfr+ "
      << cfr_final << " at 1k; " << secs << "s";
  detail = out.str();
  if (!check.all_ok) detail += "; " + check.detail.str();
  return check.all_ok;
}

bool criterion_single_agent_cooperative(std::string& detail) {
  Checker check;
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream out;
  for (const char* game : {"single_agent_kuhn_a", "single_agent_kuhn_b",
                           "tiny_hanabi_a", "tiny_hanabi_b", "tiny_hanabi_c"}) {
    for (const char* algorithm : {"gmd", "cmd"}) {
      RunResult result = run(ExperimentConfig::from_string(
          std::string("game = ") + game + "\nalgorithm = " + algorithm +
          "\nmeasure = optgap\niterations = 20000\neval_every = 100\nseed = 0\n"));
      double best = std::numeric_limits<double>::infinity();
      for (const IterationRecord& rec : result.records)
        best = std::min(best, rec.measure_value);
      out << " " << algorithm << ":" << game << "=" << best;
      check.require(best < 1e-3, std::string(game) + "/" + algorithm +
                                     " optgap " + std::to_string(best));
    }
  }
  const double secs = elapsed_since(t0);
  check.require(secs < 300.0, "runtime " + std::to_string(secs) + "s");
  detail = "best optgap:" + out.str();
  if (!check.all_ok) detail += "; " + check.detail.str();
  return check.all_ok;
}

bool criterion_mcc_measures(std::string& detail) {
  Checker check;
  GameTree kuhn3 = make_kuhn(3);
  Rng rng(31);
  double worst_identity = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    JointPolicy joint = oracle::random_joint_policy(kuhn3, rng);
    const double delta =
        std::abs(mcc_nash_conv(kuhn3, joint, {{0}, {1}, {2}}) - nash_conv(kuhn3, joint));
    worst_identity = std::max(worst_identity, delta);
  }
  check.require(worst_identity <= 1e-12,
                "singleton identity off by " + std::to_string(worst_identity));

  GameTree mcc = make_builtin(GameSpec::parse("mcc_kuhn_a")).tree;
  double worst_drop = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    JointPolicy joint = oracle::random_joint_policy(mcc, rng, 1e-3);
    TeamBestResponseResult result =
        team_best_response(mcc, joint, {0, 1}, 100, {}, true);
    for (size_t i = 1; i < result.trace.size(); ++i)
      worst_drop = std::max(worst_drop, result.trace[i - 1] - result.trace[i]);
  }
  check.require(worst_drop <= 1e-9,
                "team value dropped by " + std::to_string(worst_drop));
  std::ostringstream out;
  out << "singleton identity max err " << worst_identity
      << ", worst team-value drop " << worst_drop;
  detail = out.str();
  if (!check.all_ok) detail += "; " + check.detail.str();
  return check.all_ok;
}

bool criterion_meta_controller(std::string& detail) {
  Checker check;
  // Sign invariance: scaling the losses leaves DRS untouched and scales RS.
  McConfig config;
  config.samples = 4;
  config.mu = 0.005;
  Eigen::VectorXd alpha = Eigen::VectorXd::Constant(3, 0.5);
  auto loss = [](const Eigen::VectorXd& x) {
    return 1e-3 * x[0] - 2e-3 * x[1] + 5e-4 * x[2] * x[2];
  };
  auto scaled = [&](const Eigen::VectorXd& x) { return 10.0 * loss(x); };
  auto never = []() { return 0.0; };

  Rng a(5), b(5), c(5), d(5);
  Eigen::VectorXd drs1 = mc_update(McKind::Drs, alpha, loss, never, config, a).alpha;
  Eigen::VectorXd drs2 = mc_update(McKind::Drs, alpha, scaled, never, config, b).alpha;
  check.require((drs1 - drs2).cwiseAbs().maxCoeff() == 0.0, "drs not sign-invariant");

  Eigen::VectorXd rs1 = mc_update(McKind::Rs, alpha, loss, never, config, c).alpha;
  Eigen::VectorXd rs2 = mc_update(McKind::Rs, alpha, scaled, never, config, d).alpha;
  const double scale_err =
      ((rs2 - alpha) - 10.0 * (rs1 - alpha)).cwiseAbs().maxCoeff();
  check.require(scale_err <= 1e-12, "rs scaling off by " + std::to_string(scale_err));
  check.require((rs1 - alpha).cwiseAbs().maxCoeff() > 0.0, "rs update vanished");

  // Warm-up weights are exactly 1/k, and alpha stays inside [iota, 1].
  GameTree pennies = parse_game_file(oracle::matching_pennies_text());
  GmdConfig gmd;
  gmd.history_len = 3;
  gmd.alpha = Eigen::VectorXd::Constant(3, 1.0 / 3);
  gmd.magnet_enabled = true;
  gmd.alpha_magnet = 1.0 / 3;
  McConfig mc;
  auto measure = [&](const JointPolicy& j) { return nash_conv(pennies, j); };
  Rng rng(3);
  JointPolicy joint = JointPolicy::uniform(pennies);
  GmdState state = GmdState::init(pennies, joint, gmd.history_len);
  bool warmup_exact = true;
  bool in_bounds = true;
  for (long k = 1; k <= 2000; ++k) {
    joint = cmd_iteration(pennies, joint, state, gmd, mc, measure, k, rng);
    Eigen::VectorXd packed = gmd.packed_alpha();
    if (k <= gmd.history_len) {
      for (int i = 0; i < packed.size(); ++i)
        warmup_exact &= packed[i] == 1.0 / static_cast<double>(k);
    }
    in_bounds &= packed.minCoeff() >= mc.iota && packed.maxCoeff() <= 1.0;
  }
  check.require(warmup_exact, "warm-up weights are not exactly 1/k");
  check.require(in_bounds, "alpha left [iota, 1]");
  detail = check.all_ok ? "drs sign-invariant, rs linear, warm-up exact, bounds hold"
                        : check.detail.str();
  return check.all_ok;
}

bool criterion_determinism(std::string& detail) {
  Checker check;
  const std::string cmd_text =
      "game = single_agent_kuhn_a\nalgorithm = cmd\nmeasure = optgap\n"
      "iterations = 200\neval_every = 10\nseed = 7\n";
  RunResult a = run(ExperimentConfig::from_string(cmd_text));
  RunResult b = run(ExperimentConfig::from_string(cmd_text));
  check.require(records_to_csv(a.records, a.alpha_dim) ==
                    records_to_csv(b.records, b.alpha_dim),
                "cmd csv differs between identical runs");

  RunResult c = run(ExperimentConfig::from_string(
      "game = kuhn_poker\nalgorithm = cfr_plus\nmeasure = nashconv\n"
      "iterations = 100\neval_every = 10\nseed = 3\n"));
  RunResult d = run(ExperimentConfig::from_string(
      "game = kuhn_poker\nalgorithm = cfr_plus\nmeasure = nashconv\n"
      "iterations = 100\neval_every = 10\nseed = 3\n"));
  check.require(records_to_csv(c.records, c.alpha_dim) ==
                    records_to_csv(d.records, d.alpha_dim),
                "cfr+ csv differs between identical runs");
  detail = check.all_ok ? "byte-identical CSVs for matching seeds" : check.detail.str();
  return check.all_ok;
}

bool criterion_measure_identities(std::string& detail) {
  Checker check;
  Rng rng(17);
  double worst_sw = 0.0;
  for (const char* name : {"kuhn_poker:players=2", "kuhn_poker:players=3",
                           "goofspiel:players=3,cards=3"}) {
    GameTree tree = make_builtin(GameSpec::parse(name)).tree;
    for (int trial = 0; trial < 5; ++trial) {
      JointPolicy joint = oracle::random_joint_policy(tree, rng);
      worst_sw = std::max(worst_sw, std::abs(social_welfare(tree, joint)));
    }
  }
  check.require(worst_sw <= 1e-9, "zero-sum sw " + std::to_string(worst_sw));

  GameTree kuhn3 = make_kuhn(3);
  double worst_cce = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    JointPolicy joint = oracle::random_joint_policy(kuhn3, rng);
    worst_cce = std::max(worst_cce,
                         std::abs(cce_gap(kuhn3, joint) - nash_conv(kuhn3, joint)));
  }
  check.require(worst_cce <= 1e-12, "ccegap identity " + std::to_string(worst_cce));

  GameTree pennies = parse_game_file(oracle::matching_pennies_text());
  const double pennies_conv = nash_conv(pennies, JointPolicy::uniform(pennies));
  check.require(std::abs(pennies_conv) <= 1e-12,
                "uniform pennies nashconv " + std::to_string(pennies_conv));
  std::ostringstream out;
  out << "max |sw| " << worst_sw << ", max |ccegap-nashconv| " << worst_cce
      << ", pennies nashconv " << pennies_conv;
  detail = out.str();
  if (!check.all_ok) detail += "; " + check.detail.str();
  return check.all_ok;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "decision-point counts", criterion_decision_points},
      {2, "newton-kkt correctness", criterion_newton_kkt},
      {3, "closed-form equivalence", criterion_closed_forms},
      {4, "squared-euclidean proximal formula", criterion_mmd_eu},
      {5, "competitive convergence", criterion_competitive},
      {6, "single-agent and cooperative convergence", criterion_single_agent_cooperative},
      {7, "team measures", criterion_mcc_measures},
      {8, "meta-controller unit behavior", criterion_meta_controller},
      {9, "determinism", criterion_determinism},
      {10, "measure identities", criterion_measure_identities},
  };

  bool all_ok = true;
  for (const Criterion& criterion : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    all_ok &= ok;
    std::printf("[%s] criterion %2d, %s: %s\n", ok ? "PASS" : "FAIL", criterion.id,
                criterion.name, detail.c_str());
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
