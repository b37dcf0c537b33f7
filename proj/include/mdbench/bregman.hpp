#pragma once

#include <Eigen/Core>
#include <string>

namespace mdbench {

enum class ConvexKind { Power, NegEntropy, NegPower, Exp };

// One member of the convex-function family behind the Bregman divergence:
// x^n (n > 1), x ln x, -x^n (0 < n < 1), or e^(kx) (k > 0).
class ConvexFamily {
 public:
  static ConvexFamily power(double n);
  static ConvexFamily neg_entropy();
  static ConvexFamily neg_power(double n);
  static ConvexFamily exponential(double k);

  // Config forms: "power:n=2", "entropy", "negpower:n=0.1", "exp:k=1".
  static ConvexFamily parse(const std::string& spec);

  ConvexKind kind() const { return kind_; }
  double param() const { return param_; }
  std::string to_string() const;

 private:
  ConvexFamily(ConvexKind kind, double param) : kind_(kind), param_(param) {}
  ConvexKind kind_;
  double param_;
};

// Pointwise evaluators. psi accepts [0, 1] (the entropy value at 0 is the
// continuity limit 0); psi_prime accepts (0, 1]. The inverse-map domains are
// per family: Power needs y >= 0, NegPower y < 0, Exp y > 0, entropy is
// total. Domain violations throw std::domain_error naming the family and the
// argument; nothing is clamped here.
double psi(const ConvexFamily& family, double x);
double psi_prime(const ConvexFamily& family, double x);
double psi_prime_inv(const ConvexFamily& family, double y);
double psi_prime_inv_deriv(const ConvexFamily& family, double y);

// B(x, y) = phi(x) - phi(y) - <phi'(y), x - y> with phi the coordinate sum of
// psi. x must lie on the simplex, y on the simplex with strictly positive
// entries.
double bregman_div(const ConvexFamily& family, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y);

}  // namespace mdbench
