#include "hlbm/regime.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hlbm::regime {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

const char* to_string(RegimeCase c) {
  switch (c) {
    case RegimeCase::NavierStokes: return "NSE(i)";
    case RegimeCase::Brinkman: return "Brinkman(ii)";
    case RegimeCase::DarcyTimeDependent: return "Darcy_t(iii)";
    case RegimeCase::DarcyWithMemory: return "Darcy_mem(iv)";
  }
  return "?";
}

double PorousScaling::obstacle_size() const {
  if (a_eps) return *a_eps;
  if (law) return law->C * std::pow(epsilon, law->n);
  throw std::invalid_argument("PorousScaling: no obstacle law given");
}

void PorousScaling::validate() const {
  if (d != 2 && d != 3)
    throw std::invalid_argument("PorousScaling: dimension must be 2 or 3, got " + std::to_string(d));
  if (!(epsilon > 0.0))
    throw std::invalid_argument("PorousScaling: cell side epsilon must be positive");
  const double a = obstacle_size();
  if (!(a > 0.0))
    throw std::domain_error("PorousScaling: obstacle size must be positive");
  if (!(a < epsilon))
    throw std::domain_error("PorousScaling: obstacle must fit strictly inside the cell (a_eps < epsilon)");
}

double sigma_ratio(const PorousScaling& s) {
  s.validate();
  const double a = s.obstacle_size();
  if (s.d >= 3) return std::sqrt(std::pow(s.epsilon, s.d) / std::pow(a, s.d - 2));
  return s.epsilon * std::sqrt(std::fabs(std::log(a / s.epsilon)));
}

double power_law_sigma(double C, int n, double epsilon) {
  if (!(C > 0.0) || !(epsilon > 0.0))
    throw std::domain_error("power_law_sigma: C and epsilon must be positive");
  return std::sqrt(std::pow(epsilon, 3 - n) / C);
}

double critical_obstacle_size(int d, double epsilon, double C0) {
  if (!(C0 > 0.0)) throw std::domain_error("critical_obstacle_size: prefactor C0 must be positive");
  if (!(epsilon > 0.0)) throw std::domain_error("critical_obstacle_size: epsilon must be positive");
  if (d >= 3) return C0 * std::pow(epsilon, static_cast<double>(d) / (d - 2));
  if (d == 2) return std::exp(-C0 / (epsilon * epsilon));
  throw std::invalid_argument("critical_obstacle_size: dimension must be >= 2");
}

RegimeReport classify_regime(const PorousScaling& s) {
  if (s.d != 3)
    throw std::invalid_argument("classify_regime: implemented for d = 3 only");
  if (!s.law)
    throw std::invalid_argument("classify_regime: requires a power-law obstacle size a = C*eps^n");
  const double C = s.law->C;
  const int n = s.law->n;
  if (!(C > 0.0)) throw std::invalid_argument("classify_regime: prefactor C must be positive");
  switch (n) {
    case 4:
      return {RegimeCase::NavierStokes, {SigmaLimitKind::Infinite}, 1.0};
    case 3:
      return {RegimeCase::Brinkman, {SigmaLimitKind::Finite, 1.0 / std::sqrt(C)}, 1.0};
    case 2:
      return {RegimeCase::DarcyTimeDependent, {SigmaLimitKind::Zero}, 1.0};
    case 1: {
      if (C > 1.0)
        throw std::invalid_argument("classify_regime: n = 1 requires C <= 1 so the obstacle fits the cell");
      return {RegimeCase::DarcyWithMemory, {SigmaLimitKind::Zero}, 1.0 - C * kPi / 6.0};
    }
    default:
      throw std::invalid_argument("classify_regime: unsupported exponent n = " + std::to_string(n) +
                                  " (expected n in {1,2,3,4})");
  }
}

double porosity(const PorousScaling& s) {
  if (s.d != 3) throw std::invalid_argument("porosity: implemented for d = 3 spheres only");
  if (!(s.epsilon > 0.0)) throw std::invalid_argument("porosity: epsilon must be positive");
  const double a = s.obstacle_size();
  if (!(a > 0.0) || a > s.epsilon)
    throw std::domain_error("porosity: obstacle diameter must satisfy 0 < a_eps <= epsilon");
  const double r = a / s.epsilon;
  const double phi = 1.0 - kPi / 6.0 * r * r * r;
  // phi rounds to 1.0 for vanishing obstacles; only nonpositive or > 1
  // results signal inconsistent inputs
  if (!(phi > 0.0) || phi > 1.0)
    throw std::domain_error("porosity: value outside (0, 1)");
  return phi;
}

double porosity_control(double nu, double tau, double K) {
  if (!(nu > 0.0) || !(tau > 0.0))
    throw std::invalid_argument("porosity_control: nu and tau must be positive");
  if (std::isinf(K)) return 1.0;
  if (!(K > 0.0)) throw std::invalid_argument("porosity_control: permeability K must be positive or +inf");
  const double varpi = 1.0 - nu * tau / K;
  if (varpi < 0.0)
    throw std::domain_error("porosity_control: nu*tau/K exceeds 1 (over-damped, outside model validity)");
  return varpi;
}

double porosity_control_diffusive(double nu, double eps_param, double K) {
  if (!(eps_param > 0.0))
    throw std::invalid_argument("porosity_control_diffusive: scaling parameter must be positive");
  // Delegation keeps the identity with porosity_control(nu, 3*nu*eps^2, K) exact.
  return porosity_control(nu, 3.0 * nu * eps_param * eps_param, K);
}

Nondim nondimensional_numbers(double l_f, double c_bar, double U, double L, double nu) {
  if (!(l_f > 0.0) || !(c_bar > 0.0) || !(U > 0.0) || !(L > 0.0) || !(nu > 0.0))
    throw std::invalid_argument("nondimensional_numbers: all inputs must be positive");
  const double c_s = c_bar * std::sqrt(3.0 * kPi / 8.0);
  return {l_f / L, U / c_s, U * L / nu};
}

KineticScaling KineticScaling::from_diffusive(double nu, double eps_param, double K) {
  const double tau = 3.0 * nu * eps_param * eps_param;
  return {nu, eps_param, K, tau, porosity_control(nu, tau, K)};
}

KineticScaling KineticScaling::from_relaxation_time(double nu, double tau, double K) {
  const double eps = std::sqrt(tau / (3.0 * nu));
  return {nu, eps, K, tau, porosity_control(nu, tau, K)};
}

double permeability_from_cell(double sigma, double A) {
  if (!(sigma > 0.0) || !(A > 0.0))
    throw std::invalid_argument("permeability_from_cell: sigma and A must be positive");
  return sigma * sigma * A;
}

}  // namespace hlbm::regime
