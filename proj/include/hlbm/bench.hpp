// Analytic-solution benchmarks covering the three homogenization regimes
// (Navier-Stokes, Brinkman, Darcy) plus the convergence-order estimator.
#pragma once

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hlbm::bench {

// Reference solutions, templated so tests can drive them in long double for
// the finite-difference residual oracle.

template <class Real>
struct TaylorGreenRefT {
  Real ux, uy, p;
};

// u = U0 (-cos(kx) sin(ky), sin(kx) cos(ky)) e^{-2 nu k^2 t},
// p = -(U0^2/4)(cos 2kx + cos 2ky) e^{-4 nu k^2 t}.
template <class Real>
TaylorGreenRefT<Real> taylor_green_ref(Real x, Real y, Real t, Real nu, Real U0, Real k) {
  const Real decay = std::exp(Real(-2) * nu * k * k * t);
  TaylorGreenRefT<Real> r;
  r.ux = -U0 * std::cos(k * x) * std::sin(k * y) * decay;
  r.uy = U0 * std::sin(k * x) * std::cos(k * y) * decay;
  r.p = -(U0 * U0 / Real(4)) * (std::cos(Real(2) * k * x) + std::cos(Real(2) * k * y)) * decay * decay;
  return r;
}

// Steady force-driven channel with permeability sink:
// u(y) = (F K / nu) [1 - cosh((y - H/2)/sqrt(K)) / cosh(H/(2 sqrt(K)))].
template <class Real>
Real brinkman_channel_ref(Real y, Real H, Real nu, Real K, Real F) {
  const Real s = std::sqrt(K);
  return F * K / nu * (Real(1) - std::cosh((y - H / Real(2)) / s) / std::cosh(H / (Real(2) * s)));
}

template <class Real>
Real poiseuille_ref(Real y, Real H, Real nu, Real F) {
  return F / (Real(2) * nu) * y * (H - y);
}

inline double reference_taylor_green_ux(double x, double y, double t, double nu, double U0, double k) {
  return taylor_green_ref<double>(x, y, t, nu, U0, k).ux;
}
using TaylorGreenRef = TaylorGreenRefT<double>;
inline TaylorGreenRef reference_taylor_green(double x, double y, double t, double nu, double U0, double k) {
  return taylor_green_ref<double>(x, y, t, nu, U0, k);
}
inline double reference_brinkman_channel(double y, double H, double nu, double K, double F) {
  return brinkman_channel_ref<double>(y, H, nu, K, F);
}
inline double reference_poiseuille(double y, double H, double nu, double F) {
  return poiseuille_ref<double>(y, H, nu, F);
}

// Uniformly forced periodic Darcy flow: steady u = (K/nu) F, transient
// u(t) = (K/nu) F (1 - e^{-nu t / K}) from rest.
double reference_darcy_uniform(double nu, double K, double F);
double reference_darcy_transient(double t, double nu, double K, double F);

// Experimental orders of convergence, order_i = log2(e_i / e_{i+1}) for a
// strictly h-halving ladder.
std::vector<double> eoc(std::span<const std::pair<double, double>> h_err);

struct BenchmarkCase {
  std::string name;  // taylor_green | brinkman_channel | darcy_uniform | poiseuille
  double nu = 0.1;
  double K = std::numeric_limits<double>::infinity();
  double F = 1.0;
  double H = 1.0;        // domain extent
  double U0 = 0.1;       // Taylor-Green amplitude
  double k = 2.0 * 3.14159265358979323846;
  double T_end = 0.0;    // compare time (0 = steady state)
  double tau_lb = 0.8;
  // Transverse body-force amplitude F_y(y) = Fy * sin(2 pi y / H). A purely
  // force-driven channel keeps a constant pressure to machine rounding, so
  // the pressure consistency order needs a conservative transverse component
  // with the exact hydrostatic profile p(y) = -Fy H/(2 pi) cos(2 pi y / H);
  // the velocity solution is unchanged.
  double Fy = 0.0;
  std::vector<int> ladder;

  static BenchmarkCase make(const std::string& name);
};

struct LadderPoint {
  int n = 0;
  long steps = 0;
  double err_u_l2 = 0.0;
  double err_u_max = 0.0;
  double err_p_l2 = 0.0;
  double seconds = 0.0;
};

struct ErrorReport {
  std::string case_name;
  std::vector<LadderPoint> points;
  std::vector<double> eoc_u, eoc_p;
  double extra = 0.0;  // taylor_green: decay-rate rel. error; darcy: transient rel. error
  bool within_bands = false;
  std::string summary() const;
  std::string csv() const;
};

ErrorReport run_benchmark(const BenchmarkCase& c);

// Single-resolution runs (building blocks of run_benchmark and the tests).
struct TaylorGreenRun {
  long steps = 0;
  double t_end = 0.0;
  double err_u_l2 = 0.0, err_u_max = 0.0, err_p_l2 = 0.0;
  double decay_rate = 0.0, decay_rate_ref = 0.0;
};
TaylorGreenRun run_taylor_green(int n, const BenchmarkCase& c);

struct ChannelRun {
  long steps = 0;
  double err_u_l2 = 0.0, err_u_max_rel = 0.0, err_p_l2 = 0.0;
  std::vector<double> y, u_sim, u_ref;  // physical profile at the first column
};
ChannelRun run_channel(int ny, const BenchmarkCase& c);

struct DarcyRun {
  double steady_rel_err = 0.0;
  double transient_rel_err = 0.0;
  long transient_step = 0;
};
DarcyRun run_darcy(const BenchmarkCase& c);

// Steady-channel K sweep: boundary-layer width (wall distance where u first
// reaches 95% of the Darcy plug velocity) against the 3 sqrt(K) estimate.
struct KSweepPoint {
  double K = 0.0;
  double width = 0.0;
  double predicted = 0.0;  // 3 sqrt(K)
  double rel_dev = 0.0;
};
std::vector<KSweepPoint> boundary_layer_sweep(int ny, std::span<const double> Ks,
                                              const BenchmarkCase& base);

}  // namespace hlbm::bench
