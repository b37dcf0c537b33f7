#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>

namespace mdbench {

// Deterministic random source. All sampling is built from raw mt19937_64 draws
// so identical seeds give identical streams independent of the standard
// library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    has_cached_ = true;
    return r * std::cos(theta);
  }

  Eigen::VectorXd normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  // Uniform direction on the unit sphere.
  Eigen::VectorXd sphere_vector(int n) {
    Eigen::VectorXd v = normal_vector(n);
    double norm = v.norm();
    while (norm < 1e-12) {
      v = normal_vector(n);
      norm = v.norm();
    }
    return v / norm;
  }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace mdbench
