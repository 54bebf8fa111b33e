// Closed-form algebra of the porosity-controlled Maxwellian: pointwise
// evaluation, equilibrium moments, central-moment tensors, the first-order
// Chapman-Enskog population ansatz and the stress tensor assembled from the
// exact Gaussian moment integrals.
#pragma once

#include <array>

namespace hlbm::kinetics {

// Fixed capacity 3, used with runtime dimension d <= 3. Unused entries are
// zero so contractions may always run over the full extent.
using Vec = std::array<double, 3>;
using Mat = std::array<std::array<double, 3>, 3>;
using Ten3 = std::array<Mat, 3>;         // [i][j][k]
using Ten4 = std::array<Ten3, 3>;        // [i][j][k][l]

// Parameters (n, u, varpi, eps, d, m) of the porosity-controlled equilibrium
//   M(v) = n eps^d / (2 pi/3)^(d/2) * exp(-3/2 (v eps - varpi u eps)^2),
// a Gaussian in v with mean varpi*u and covariance 1/(3 eps^2) I.
struct HomogenizedMaxwellian {
  double n = 1.0;
  Vec u{};
  double varpi = 1.0;
  double eps = 1.0;
  int d = 3;
  double m = 1.0;

  void validate() const;  // throws std::invalid_argument
  double rho() const { return m * n; }
  double pressure() const { return rho() / (3.0 * eps * eps); }
};

// Raw field moments (discrete or continuous extraction target).
struct MomentSet {
  double rho;
  Vec u;
  Mat P;
  double p;  // (1/d) trace(P)

  void validate(int d) const;  // p-trace identity and symmetry of P
};

// Moments of the damped equilibrium itself: u carries the varpi prefactor
// and P is the covariance block rho/(3 eps^2) I about that mean.
MomentSet equilibrium_moment_set(const HomogenizedMaxwellian& M);

// Local field data entering the Chapman-Enskog expansion. grad_u[a][b] is
// du_a/dx_b; F is the body force per unit mass.
struct FieldGradients {
  Mat grad_u{};
  Vec dt_u{};
  Vec grad_rho{};
  Vec F{};
};

double maxwellian_eval(const HomogenizedMaxwellian& M, const Vec& v);

struct EquilibriumMoments {
  double rho;
  Vec u;    // carries the varpi prefactor
  double p;
};
EquilibriumMoments equilibrium_moments(const HomogenizedMaxwellian& M);

// m * int c_i c_j M dv with c = v - u:
//   rho/(3 eps^2) delta_ij + rho (1-varpi)^2 u_i u_j   (exact).
Mat central_moment2(const HomogenizedMaxwellian& M);

// m * int c_i c_j c_k M dv, exact:
//   (varpi-1) rho/(3 eps^2) (u_i d_jk + u_j d_ik + u_k d_ij)
//   - rho (1-varpi)^3 u_i u_j u_k.
Ten3 central_moment3(const HomogenizedMaxwellian& M);

// m * int c_i c_j c_{varpi,k} v_l M dv, exact:
//   rho/(9 eps^4) (d_ij d_kl + d_ik d_jl + d_il d_jk)
//   + rho (1-varpi)^2 u_i u_j d_kl /(3 eps^2)
//   - rho varpi (1-varpi) (u_i u_l d_jk + u_j u_l d_ik) /(3 eps^2).
Ten4 mixed_moment_ccwv(const HomogenizedMaxwellian& M);

// First-order ansatz f = M [1 - 3 nu eps^2 (D/Dt log M)] evaluated at v,
// with d(t) rho eliminated through mass conservation:
//   D/Dt log M = -div u + (c . grad rho)/rho
//                + 3 eps^2 varpi c_w . (dt_u + (v . grad) u)
//                - 3 eps^2 (c_w . F)/m,
// where c = v - u and c_w = v - varpi u.
double chapman_enskog_population(const HomogenizedMaxwellian& M, const FieldGradients& g,
                                 double nu, const Vec& v);

struct StressResult {
  Mat P;
  int remainder_order;  // exponent b of the O(eps^b) defect vs Newton's law
};

// Stress tensor of the Chapman-Enskog ansatz assembled from the exact
// closed-form moment integrals. Approaches p I - nu rho (grad u + grad u^T)
// with an O(eps^2) remainder when 1 - varpi is O(eps^2).
StressResult chapman_enskog_stress(double rho, const Vec& u, const FieldGradients& g,
                                   double nu, double eps_param, double varpi, int d);

// Homogenization sink of the momentum balance, -nu K^{-1} rho u; the zero
// vector for K = +infinity.
Vec momentum_balance_rhs(double rho, const Vec& u, double nu, double K, int d);

}  // namespace hlbm::kinetics
