// Geometric scaling analysis of the porous obstacle matrix: cell/obstacle
// size ratio, critical obstacle size, porosity, homogenization regime
// classification, and the kinetic porosity-control parameters.
#pragma once

#include <optional>
#include <string>

namespace hlbm::regime {

// Homogenization regimes, ordered by obstacle size (smallest first).
enum class RegimeCase {
  NavierStokes,        // (i)   obstacles too small, no damping survives
  Brinkman,            // (ii)  critical size, finite damping
  DarcyTimeDependent,  // (iii) large obstacles, time-dependent Darcy law
  DarcyWithMemory,     // (iv)  obstacles of cell order, Darcy with memory
};

const char* to_string(RegimeCase c);

// Obstacle size law a(eps) = C * eps^n.
struct PowerLaw {
  double C;
  int n;
};

// Geometry of one periodic cell: side length epsilon, centered spherical
// obstacle of diameter a_eps given explicitly or through a power law.
struct PorousScaling {
  int d = 3;
  double epsilon = 0.0;
  std::optional<double> a_eps;
  std::optional<PowerLaw> law;

  double obstacle_size() const;
  void validate() const;  // throws std::invalid_argument
};

enum class SigmaLimitKind { Zero, Finite, Infinite };

// Tagged extended-real limit of sigma_eps; `value` is meaningful only for
// the Finite tag.
struct SigmaLimit {
  SigmaLimitKind kind;
  double value = 0.0;
};

struct RegimeReport {
  RegimeCase case_label;
  SigmaLimit sigma_limit;
  double porosity_limit;  // in (0, 1]
};

// sigma_eps = sqrt(eps^d / a^(d-2)) for d >= 3, eps*sqrt(|log(a/eps)|) for d = 2.
double sigma_ratio(const PorousScaling& s);

// Closed form of sigma_eps for d = 3 power laws, sqrt(eps^(3-n)/C). Equals
// sigma_ratio where both are defined but stays evaluable at the boundary
// case a = eps (n = 1, C = 1) used by the minimal-porosity argument.
double power_law_sigma(double C, int n, double epsilon);

// Obstacle size for which sigma_eps attains a finite positive limit.
double critical_obstacle_size(int d, double epsilon, double C0);

// Classify a d = 3 power-law geometry into the four homogenization cases.
RegimeReport classify_regime(const PorousScaling& s);

// phi = 1 - pi*a^3/(6 eps^3) for the centered sphere of diameter a (d = 3).
double porosity(const PorousScaling& s);

// varpi = 1 - nu*tau/K; exactly 1 for K = +infinity. Rejects varpi < 0.
double porosity_control(double nu, double tau, double K);

// Diffusive-scaling variant, tau = 3*nu*eps^2 substituted.
double porosity_control_diffusive(double nu, double eps_param, double K);

struct Nondim {
  double Kn, Ma, Re;
};

// Knudsen, Mach and Reynolds numbers from mean free path, mean thermal
// velocity, characteristic velocity/length and viscosity. The isothermal
// sound speed is c_s = c_bar * sqrt(3*pi/8).
Nondim nondimensional_numbers(double l_f, double c_bar, double U, double L, double nu);

// Kinetic scaling parameters of the damped BGK model.
struct KineticScaling {
  double nu;
  double eps_param;
  double K;
  double tau;
  double varpi;

  // tau = 3*nu*eps^2, varpi = 1 - nu*tau/K.
  static KineticScaling from_diffusive(double nu, double eps_param, double K);
  static KineticScaling from_relaxation_time(double nu, double tau, double K);
};

// Permeability eigenvalue from the cell tensor, K = sigma^2 * A. Users may
// supply K directly or the (sigma, A) pair; this maps the latter.
double permeability_from_cell(double sigma, double A);

}  // namespace hlbm::regime
