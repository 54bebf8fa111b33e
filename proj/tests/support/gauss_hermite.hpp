// Test-support Gauss-Hermite quadrature (weight e^{-x^2}) and tensor-product
// integration against the velocity-space Gaussian. Independent of the closed
// forms under test: nodes come from Newton iteration on the orthonormal
// Hermite recurrence, and integrands evaluate the distribution pointwise.
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hlbm/kinetics.hpp"

namespace hlbm::test {

struct GaussHermite {
  std::vector<double> x;
  std::vector<double> w;
};

// Orthonormal Hermite value and derivative at x:
//   p_{k+1} = x sqrt(2/(k+1)) p_k - sqrt(k/(k+1)) p_{k-1}, p_0 = pi^{-1/4},
//   p_n'(x) = sqrt(2n) p_{n-1}(x).
inline void hermite_eval(int n, double x, double& pn, double& pn1) {
  double p0 = 0.7511255444649425;  // pi^{-1/4}
  double pm = 0.0;
  for (int k = 0; k < n; ++k) {
    const double pk = x * std::sqrt(2.0 / (k + 1)) * p0 - std::sqrt(static_cast<double>(k) / (k + 1)) * pm;
    pm = p0;
    p0 = pk;
  }
  pn = p0;
  pn1 = pm;
}

inline GaussHermite gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: need n >= 1");
  GaussHermite q;
  q.x.assign(n, 0.0);
  q.w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  std::vector<double> roots;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    // seeds for the descending positive roots
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * roots[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * roots[1];
    } else {
      z = 2.0 * z - roots[i - 2];
    }
    double pn = 0.0, pn1 = 0.0;
    for (int it = 0; it < 100; ++it) {
      hermite_eval(n, z, pn, pn1);
      const double dp = std::sqrt(2.0 * n) * pn1;
      const double dz = pn / dp;
      z -= dz;
      if (std::fabs(dz) < 1e-15 * std::max(1.0, std::fabs(z))) break;
    }
    hermite_eval(n, z, pn, pn1);
    roots.push_back(z);
    q.x[i] = z;
    q.x[n - 1 - i] = -z;
    const double w = 1.0 / (n * pn1 * pn1);
    q.w[i] = w;
    q.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) q.x[n / 2] = 0.0;
  return q;
}

// integral over R^d of g(v) M(v) dv where M is evaluated POINTWISE through
// maxwellian_eval. Substitution v = varpi u + sqrt(2) s x, s = 1/(sqrt(3) eps):
//   integral = sum_i w_i e^{x_i^2} g(v_i) M(v_i) (sqrt(2) s)^d.
inline double integrate_against_maxwellian(const kinetics::HomogenizedMaxwellian& M,
                                           const std::function<double(const kinetics::Vec&)>& g,
                                           int nodes = 40) {
  const GaussHermite q = gauss_hermite(nodes);
  const double s = 1.0 / (std::sqrt(3.0) * M.eps);
  const double scale = std::sqrt(2.0) * s;
  const int d = M.d;
  double total = 0.0;
  std::vector<int> idx(d, 0);
  while (true) {
    kinetics::Vec v{};
    double wprod = 1.0;
    double x2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double xa = q.x[idx[a]];
      v[a] = M.varpi * M.u[a] + scale * xa;
      wprod *= q.w[idx[a]];
      x2 += xa * xa;
    }
    total += wprod * std::exp(x2) * g(v) * kinetics::maxwellian_eval(M, v) *
             std::pow(scale, d);
    int a = 0;
    while (a < d && ++idx[a] == nodes) idx[a++] = 0;
    if (a == d) break;
  }
  return total;
}

// All moment integrals under test accumulated in a single node sweep
// (m * int g M dv for g in {1, v_i, c_i c_j, c_i c_j c_k, c_i c_j c_wk v_l}).
struct MomentSweep {
  double zeroth = 0.0;
  kinetics::Vec first{};        // int v_i M / n
  kinetics::Mat cm2{};
  kinetics::Ten3 cm3{};
  kinetics::Ten4 ccwv{};
};

inline MomentSweep moment_sweep(const kinetics::HomogenizedMaxwellian& M, int nodes = 40) {
  const GaussHermite q = gauss_hermite(nodes);
  const double s = 1.0 / (std::sqrt(3.0) * M.eps);
  const double scale = std::sqrt(2.0) * s;
  const int d = M.d;
  MomentSweep out;
  std::vector<int> idx(d, 0);
  while (true) {
    kinetics::Vec v{};
    double wprod = 1.0;
    double x2 = 0.0;
    for (int a = 0; a < d; ++a) {
      const double xa = q.x[idx[a]];
      v[a] = M.varpi * M.u[a] + scale * xa;
      wprod *= q.w[idx[a]];
      x2 += xa * xa;
    }
    const double wq = wprod * std::exp(x2) * kinetics::maxwellian_eval(M, v) * std::pow(scale, d) * M.m;
    kinetics::Vec c{}, cw{};
    for (int a = 0; a < d; ++a) {
      c[a] = v[a] - M.u[a];
      cw[a] = v[a] - M.varpi * M.u[a];
    }
    out.zeroth += wq;
    for (int i = 0; i < d; ++i) {
      out.first[i] += wq * v[i];
      for (int j = 0; j < d; ++j) {
        out.cm2[i][j] += wq * c[i] * c[j];
        for (int k = 0; k < d; ++k) {
          out.cm3[i][j][k] += wq * c[i] * c[j] * c[k];
          for (int l = 0; l < d; ++l) out.ccwv[i][j][k][l] += wq * c[i] * c[j] * cw[k] * v[l];
        }
      }
    }
    int a = 0;
    while (a < d && ++idx[a] == nodes) idx[a++] = 0;
    if (a == d) break;
  }
  return out;
}

}  // namespace hlbm::test
