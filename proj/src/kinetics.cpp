#include "hlbm/kinetics.hpp"

#include <cmath>
#include <stdexcept>

namespace hlbm::kinetics {

namespace {
constexpr double kPi = 3.14159265358979323846;

double dot(const Vec& a, const Vec& b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += a[i] * b[i];
  return s;
}

double kron(int a, int b) { return a == b ? 1.0 : 0.0; }
}  // namespace

void HomogenizedMaxwellian::validate() const {
  if (d < 1 || d > 3) throw std::invalid_argument("HomogenizedMaxwellian: d must be 1, 2 or 3");
  if (!(n > 0.0)) throw std::invalid_argument("HomogenizedMaxwellian: particle density must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("HomogenizedMaxwellian: scaling parameter must be positive");
  if (!(m > 0.0)) throw std::invalid_argument("HomogenizedMaxwellian: particle mass must be positive");
  if (varpi < 0.0 || varpi > 1.0)
    throw std::invalid_argument("HomogenizedMaxwellian: porosity control must lie in [0, 1]");
}

double maxwellian_eval(const HomogenizedMaxwellian& M, const Vec& v) {
  double q = 0.0;
  for (int i = 0; i < M.d; ++i) {
    const double dv = v[i] - M.varpi * M.u[i];
    q += dv * dv;
  }
  const double prefac = M.n * std::pow(M.eps, M.d) * std::pow(3.0 / (2.0 * kPi), 0.5 * M.d);
  return prefac * std::exp(-1.5 * M.eps * M.eps * q);
}

void MomentSet::validate(int d) const {
  double tr = 0.0;
  for (int i = 0; i < d; ++i) {
    tr += P[i][i];
    for (int j = 0; j < i; ++j)
      if (std::fabs(P[i][j] - P[j][i]) > 1e-12 * std::max(1.0, std::fabs(P[i][j])))
        throw std::invalid_argument("MomentSet: stress tensor must be symmetric");
  }
  if (std::fabs(p - tr / d) > 1e-12 * std::max(1.0, std::fabs(p)))
    throw std::invalid_argument("MomentSet: p must equal trace(P)/d");
}

MomentSet equilibrium_moment_set(const HomogenizedMaxwellian& M) {
  MomentSet ms{};
  ms.rho = M.rho();
  for (int i = 0; i < M.d; ++i) {
    ms.u[i] = M.varpi * M.u[i];
    ms.P[i][i] = M.pressure();
  }
  ms.p = M.pressure();
  return ms;
}

EquilibriumMoments equilibrium_moments(const HomogenizedMaxwellian& M) {
  EquilibriumMoments em;
  em.rho = M.rho();
  em.u = {};
  for (int i = 0; i < M.d; ++i) em.u[i] = M.varpi * M.u[i];
  em.p = M.pressure();
  return em;
}

Mat central_moment2(const HomogenizedMaxwellian& M) {
  const double rho = M.rho();
  const double s2 = 1.0 / (3.0 * M.eps * M.eps);
  const double b = 1.0 - M.varpi;
  Mat T{};
  for (int i = 0; i < M.d; ++i)
    for (int j = 0; j < M.d; ++j)
      T[i][j] = rho * (s2 * kron(i, j) + b * b * M.u[i] * M.u[j]);
  return T;
}

Ten3 central_moment3(const HomogenizedMaxwellian& M) {
  const double rho = M.rho();
  const double s2 = 1.0 / (3.0 * M.eps * M.eps);
  const double b = 1.0 - M.varpi;
  const Vec& u = M.u;
  Ten3 T{};
  for (int i = 0; i < M.d; ++i)
    for (int j = 0; j < M.d; ++j)
      for (int k = 0; k < M.d; ++k)
        T[i][j][k] = -rho * (b * s2 * (u[i] * kron(j, k) + u[j] * kron(i, k) + u[k] * kron(i, j)) +
                             b * b * b * u[i] * u[j] * u[k]);
  return T;
}

Ten4 mixed_moment_ccwv(const HomogenizedMaxwellian& M) {
  const double rho = M.rho();
  const double s2 = 1.0 / (3.0 * M.eps * M.eps);
  const double b = 1.0 - M.varpi;
  const double w = M.varpi;
  const Vec& u = M.u;
  Ten4 T{};
  for (int i = 0; i < M.d; ++i)
    for (int j = 0; j < M.d; ++j)
      for (int k = 0; k < M.d; ++k)
        for (int l = 0; l < M.d; ++l) {
          double val = s2 * s2 * (kron(i, j) * kron(k, l) + kron(i, k) * kron(j, l) + kron(i, l) * kron(j, k));
          val += s2 * b * b * u[i] * u[j] * kron(k, l);
          val -= s2 * w * b * (u[i] * u[l] * kron(j, k) + u[j] * u[l] * kron(i, k));
          T[i][j][k][l] = rho * val;
        }
  return T;
}

double chapman_enskog_population(const HomogenizedMaxwellian& M, const FieldGradients& g,
                                 double nu, const Vec& v) {
  const int d = M.d;
  const double rho = M.rho();
  Vec c{}, cw{};
  for (int i = 0; i < d; ++i) {
    c[i] = v[i] - M.u[i];
    cw[i] = v[i] - M.varpi * M.u[i];
  }
  double div_u = 0.0;
  for (int i = 0; i < d; ++i) div_u += g.grad_u[i][i];

  // (v . grad) u
  Vec adv{};
  for (int a = 0; a < d; ++a)
    for (int l = 0; l < d; ++l) adv[a] += g.grad_u[a][l] * v[l];

  const double e2 = 3.0 * M.eps * M.eps;
  double dlog = -div_u + dot(c, g.grad_rho, d) / rho;
  for (int a = 0; a < d; ++a) dlog += e2 * M.varpi * cw[a] * (g.dt_u[a] + adv[a]);
  dlog -= e2 * dot(cw, g.F, d) / M.m;

  return maxwellian_eval(M, v) * (1.0 - 3.0 * nu * M.eps * M.eps * dlog);
}

StressResult chapman_enskog_stress(double rho, const Vec& u, const FieldGradients& g,
                                   double nu, double eps_param, double varpi, int d) {
  if (varpi < 0.0 || varpi > 1.0)
    throw std::invalid_argument("chapman_enskog_stress: porosity control must lie in [0, 1]");
  const double s2 = 1.0 / (3.0 * eps_param * eps_param);
  const double b = 1.0 - varpi;
  const double e2 = 3.0 * eps_param * eps_param;  // 3 eps^2, so e2*s2 == 1
  const double pref = 3.0 * nu * eps_param * eps_param;

  double div_u = 0.0;
  for (int i = 0; i < d; ++i) div_u += g.grad_u[i][i];

  Mat P{};
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double T0 = rho * (s2 * kron(i, j) + b * b * u[i] * u[j]);

      // b-term: sum_k (d_k rho / rho) * m int c_i c_j c_k M dv
      double Tb = 0.0;
      for (int k = 0; k < d; ++k) {
        const double m3 = -rho * (b * s2 * (u[i] * kron(j, k) + u[j] * kron(i, k) + u[k] * kron(i, j)) +
                                  b * b * b * u[i] * u[j] * u[k]);
        Tb += g.grad_rho[k] / rho * m3;
      }

      // c-term: 3 eps^2 varpi dt_u_k * m int c_i c_j c_{w,k} M dv
      double Tc = 0.0;
      for (int k = 0; k < d; ++k) {
        const double m3w = -rho * b * s2 * (u[i] * kron(j, k) + u[j] * kron(i, k));
        Tc += e2 * varpi * g.dt_u[k] * m3w;
      }

      // d-term: 3 eps^2 varpi du_k/dx_l * m int c_i c_j c_{w,k} v_l M dv
      double Td = 0.0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double m4 = s2 * s2 * (kron(i, j) * kron(k, l) + kron(i, k) * kron(j, l) + kron(i, l) * kron(j, k));
          m4 += s2 * b * b * u[i] * u[j] * kron(k, l);
          m4 -= s2 * varpi * b * (u[i] * u[l] * kron(j, k) + u[j] * u[l] * kron(i, k));
          Td += e2 * varpi * g.grad_u[k][l] * rho * m4;
        }

      // e-term: 3 eps^2 (F_k/m) * m int c_i c_j c_{w,k} M dv, m = 1
      double Te = 0.0;
      for (int k = 0; k < d; ++k) {
        const double m3w = -rho * b * s2 * (u[i] * kron(j, k) + u[j] * kron(i, k));
        Te += e2 * g.F[k] * m3w;
      }

      // f = M [1 - pref(-a + b + c + d - e)]  =>  P = T0 + pref(a T0 + Te - Tb - Tc - Td)
      P[i][j] = T0 + pref * (div_u * T0 + Te - Tb - Tc - Td);
    }
  }
  return {P, 2};
}

Vec momentum_balance_rhs(double rho, const Vec& u, double nu, double K, int d) {
  Vec r{};
  if (std::isinf(K)) return r;
  if (!(K > 0.0)) throw std::invalid_argument("momentum_balance_rhs: K must be positive or +inf");
  for (int i = 0; i < d; ++i) r[i] = -nu / K * rho * u[i];
  return r;
}

}  // namespace hlbm::kinetics
