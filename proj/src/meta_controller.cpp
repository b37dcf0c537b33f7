#include "mdbench/meta_controller.hpp"

#include <cstdio>
#include <vector>

#include "mdbench/errors.hpp"

namespace mdbench {

McKind parse_mc_kind(const std::string& name) {
  if (name == "drs") return McKind::Drs;
  if (name == "rs") return McKind::Rs;
  if (name == "gld") return McKind::Gld;
  if (name == "glds") return McKind::Glds;
  if (name == "dglds") return McKind::Dglds;
  throw ConfigError("unknown meta-controller \"" + name +
                    "\"; use drs, rs, gld, glds, or dglds");
}

std::string mc_kind_name(McKind kind) {
  switch (kind) {
    case McKind::Drs: return "drs";
    case McKind::Rs: return "rs";
    case McKind::Gld: return "gld";
    case McKind::Glds: return "glds";
    case McKind::Dglds: return "dglds";
  }
  return "?";
}

void McConfig::validate() const {
  if (samples < 1) throw ConfigError("mc samples must be >= 1");
  if (interval < 1) throw ConfigError("mc interval must be >= 1");
  if (!(iota > 0.0 && iota < 1.0)) throw ConfigError("mc iota must be in (0, 1)");
  if (kind == McKind::Drs || kind == McKind::Rs) {
    if (!(mu > 0.0)) throw ConfigError("mc mu must be positive");
  } else {
    if (!(r_low > 0.0 && r_high >= r_low))
      throw ConfigError("mc needs 0 < r_low <= r_high");
  }
}

int sgn(double z) { return z > 0.0 ? 1 : (z < 0.0 ? -1 : 0); }

double clip_unit(double z, double iota) {
  if (z < iota) return iota;
  if (z > 1.0) return 1.0;
  return z;
}

Eigen::VectorXd clip_unit(Eigen::VectorXd z, double iota) {
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = clip_unit(z[i], iota);
  return z;
}

McUpdate mc_update(McKind kind, const Eigen::VectorXd& alpha,
                   const std::function<double(const Eigen::VectorXd&)>& evaluate_candidate,
                   const std::function<double()>& current_loss,
                   const McConfig& config, Rng& rng) {
  const int dim = static_cast<int>(alpha.size());
  const int d = config.samples;

  // Directions are fixed before any evaluation so the result cannot depend on
  // evaluation order.
  std::vector<Eigen::VectorXd> u(d);
  if (kind == McKind::Drs || kind == McKind::Rs) {
    for (int j = 0; j < d; ++j) u[j] = rng.normal_vector(dim);
  } else {
    for (int j = 0; j < d; ++j) {
      const double radius = rng.uniform(config.r_low, config.r_high);
      u[j] = radius * rng.sphere_vector(dim);
    }
  }

  McUpdate result;
  result.alpha = alpha;
  try {
    Eigen::VectorXd step = Eigen::VectorXd::Zero(dim);
    switch (kind) {
      case McKind::Drs:
      case McKind::Rs: {
        for (int j = 0; j < d; ++j) {
          const double plus =
              evaluate_candidate(clip_unit(alpha + config.mu * u[j], config.iota));
          const double minus =
              evaluate_candidate(clip_unit(alpha - config.mu * u[j], config.iota));
          const double delta = plus - minus;
          if (kind == McKind::Drs) {
            step -= config.mu * static_cast<double>(sgn(delta)) * u[j];
          } else {
            step -= config.mu * delta * u[j];
          }
          result.evaluations += 2;
        }
        break;
      }
      case McKind::Gld: {
        int best = 0;
        double best_loss = 0.0;
        for (int j = 0; j < d; ++j) {
          const double loss = evaluate_candidate(clip_unit(alpha + u[j], config.iota));
          result.evaluations += 1;
          if (j == 0 || loss < best_loss) {
            best_loss = loss;
            best = j;
          }
        }
        step = u[best];
        break;
      }
      case McKind::Glds:
      case McKind::Dglds: {
        const double baseline = current_loss();
        result.evaluations += 1;
        for (int j = 0; j < d; ++j) {
          const double loss = evaluate_candidate(clip_unit(alpha + u[j], config.iota));
          result.evaluations += 1;
          const double delta = loss - baseline;
          if (kind == McKind::Dglds) {
            step -= static_cast<double>(sgn(delta)) * u[j];
          } else {
            step -= delta * u[j];
          }
        }
        break;
      }
    }
    result.alpha = clip_unit(alpha + step, config.iota);
  } catch (const std::exception& e) {
    // Fail safe: a broken candidate evaluation leaves alpha untouched.
    std::fprintf(stderr, "meta-controller update skipped: %s\n", e.what());
    result.alpha = alpha;
    result.ok = false;
  }
  return result;
}

JointPolicy cmd_iteration(const GameTree& tree, const JointPolicy& joint,
                          GmdState& state, GmdConfig& gmd_config,
                          const McConfig& mc_config,
                          const std::function<double(const JointPolicy&)>& loss,
                          long k, Rng& rng) {
  if (k < 1) throw ConfigError("cmd iterations are 1-based");
  const int m = gmd_config.history_len;

  if (k <= m) {
    // Warm-up: only k historical policies exist yet.
    const double w = 1.0 / static_cast<double>(k);
    gmd_config.set_packed_alpha(
        Eigen::VectorXd::Constant(gmd_config.packed_dim(), w));
  } else if (k % mc_config.interval == 0) {
    auto evaluate_candidate = [&](const Eigen::VectorXd& packed) {
      GmdState cloned = state;
      GmdConfig candidate = gmd_config;
      candidate.set_packed_alpha(packed);
      const JointPolicy trial = gmd_update(tree, joint, cloned, candidate);
      return loss(trial);
    };
    auto current_loss = [&]() { return loss(joint); };
    McUpdate update = mc_update(mc_config.kind, gmd_config.packed_alpha(),
                                evaluate_candidate, current_loss, mc_config, rng);
    gmd_config.set_packed_alpha(update.alpha);
  }

  return gmd_update(tree, joint, state, gmd_config);
}

}  // namespace mdbench
