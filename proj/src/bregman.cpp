#include "mdbench/bregman.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mdbench/errors.hpp"

namespace mdbench {

ConvexFamily ConvexFamily::power(double n) {
  if (!(n > 1.0)) throw ConfigError("power family needs n > 1");
  return ConvexFamily(ConvexKind::Power, n);
}

ConvexFamily ConvexFamily::neg_entropy() {
  return ConvexFamily(ConvexKind::NegEntropy, 0.0);
}

ConvexFamily ConvexFamily::neg_power(double n) {
  if (!(n > 0.0 && n < 1.0)) throw ConfigError("negpower family needs n in (0, 1)");
  return ConvexFamily(ConvexKind::NegPower, n);
}

ConvexFamily ConvexFamily::exponential(double k) {
  if (!(k > 0.0)) throw ConfigError("exp family needs k > 0");
  return ConvexFamily(ConvexKind::Exp, k);
}

ConvexFamily ConvexFamily::parse(const std::string& spec) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  double param = 0.0;
  bool have_param = false;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    auto eq = rest.find('=');
    std::string value = eq == std::string::npos ? rest : rest.substr(eq + 1);
    try {
      param = std::stod(value);
      have_param = true;
    } catch (const std::exception&) {
      throw ConfigError("cannot parse convex family parameter in \"" + spec + "\"");
    }
  }
  if (head == "entropy") return neg_entropy();
  if (head == "power") return power(have_param ? param : 2.0);
  if (head == "negpower") return neg_power(have_param ? param : 0.1);
  if (head == "exp") return exponential(have_param ? param : 1.0);
  throw ConfigError("unknown convex family \"" + spec +
                    "\"; use power:n=..., entropy, negpower:n=..., or exp:k=...");
}

std::string ConvexFamily::to_string() const {
  std::ostringstream out;
  switch (kind_) {
    case ConvexKind::Power:
      out << "power:n=" << param_;
      break;
    case ConvexKind::NegEntropy:
      out << "entropy";
      break;
    case ConvexKind::NegPower:
      out << "negpower:n=" << param_;
      break;
    case ConvexKind::Exp:
      out << "exp:k=" << param_;
      break;
  }
  return out.str();
}

namespace {

[[noreturn]] void domain_violation(const ConvexFamily& family, const char* fn,
                                   double arg) {
  std::ostringstream out;
  out << fn << " domain violation for family " << family.to_string()
      << " at argument " << arg;
  throw std::domain_error(out.str());
}

}  // namespace

double psi(const ConvexFamily& family, double x) {
  if (x < 0.0 || x > 1.0) domain_violation(family, "psi", x);
  switch (family.kind()) {
    case ConvexKind::Power:
      return std::pow(x, family.param());
    case ConvexKind::NegEntropy:
      return x == 0.0 ? 0.0 : x * std::log(x);
    case ConvexKind::NegPower:
      return -std::pow(x, family.param());
    case ConvexKind::Exp:
      return std::exp(family.param() * x);
  }
  return 0.0;
}

double psi_prime(const ConvexFamily& family, double x) {
  if (x <= 0.0 || x > 1.0) domain_violation(family, "psi_prime", x);
  switch (family.kind()) {
    case ConvexKind::Power:
      return family.param() * std::pow(x, family.param() - 1.0);
    case ConvexKind::NegEntropy:
      return std::log(x) + 1.0;
    case ConvexKind::NegPower:
      return -family.param() * std::pow(x, family.param() - 1.0);
    case ConvexKind::Exp:
      return family.param() * std::exp(family.param() * x);
  }
  return 0.0;
}

double psi_prime_inv(const ConvexFamily& family, double y) {
  switch (family.kind()) {
    case ConvexKind::Power: {
      if (y < 0.0) domain_violation(family, "psi_prime_inv", y);
      const double n = family.param();
      return std::pow(y / n, 1.0 / (n - 1.0));
    }
    case ConvexKind::NegEntropy:
      return std::exp(y - 1.0);
    case ConvexKind::NegPower: {
      if (y >= 0.0) domain_violation(family, "psi_prime_inv", y);
      const double n = family.param();
      return std::pow(-y / n, 1.0 / (n - 1.0));
    }
    case ConvexKind::Exp: {
      if (y <= 0.0) domain_violation(family, "psi_prime_inv", y);
      const double k = family.param();
      return std::log(y / k) / k;
    }
  }
  return 0.0;
}

double psi_prime_inv_deriv(const ConvexFamily& family, double y) {
  switch (family.kind()) {
    case ConvexKind::Power: {
      if (y < 0.0) domain_violation(family, "psi_prime_inv_deriv", y);
      const double n = family.param();
      return std::pow(y / n, (2.0 - n) / (n - 1.0)) / (n * (n - 1.0));
    }
    case ConvexKind::NegEntropy:
      return std::exp(y - 1.0);
    case ConvexKind::NegPower: {
      if (y >= 0.0) domain_violation(family, "psi_prime_inv_deriv", y);
      const double n = family.param();
      return std::pow(-y / n, (2.0 - n) / (n - 1.0)) / (n * (1.0 - n));
    }
    case ConvexKind::Exp: {
      if (y <= 0.0) domain_violation(family, "psi_prime_inv_deriv", y);
      return 1.0 / (family.param() * y);
    }
  }
  return 0.0;
}

double bregman_div(const ConvexFamily& family, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& y) {
  if (x.size() != y.size())
    throw ConfigError("bregman_div dimension mismatch: " + std::to_string(x.size()) +
                      " vs " + std::to_string(y.size()));
  double div = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (y[i] <= 0.0)
      throw std::domain_error("bregman_div needs strictly positive y entries");
    div += psi(family, x[i]) - psi(family, y[i]) -
           psi_prime(family, y[i]) * (x[i] - y[i]);
  }
  return div;
}

}  // namespace mdbench
