#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hlbm/bench.hpp"

using namespace hlbm::bench;

namespace {

// 4th-order central differences in long double: the residual oracle for the
// closed-form references.
template <class F>
long double d1(const F& f, long double x, long double h) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}
template <class F>
long double d2(const F& f, long double x, long double h) {
  return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) / (12 * h * h);
}

}  // namespace

TEST_CASE("eoc") {
  {
    std::vector<std::pair<double, double>> e = {{0.1, 1e-2}, {0.05, 2.5e-3}};
    CHECK(eoc(e)[0] == doctest::Approx(2.0).epsilon(1e-12));
  }
  {
    std::vector<std::pair<double, double>> e = {{0.1, 1e-2}, {0.05, 5e-3}};
    CHECK(eoc(e)[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    std::vector<std::pair<double, double>> e = {{0.1, 3e-4}, {0.05, 3e-4}};
    CHECK(eoc(e)[0] == doctest::Approx(0.0));
  }
  {
    std::vector<std::pair<double, double>> e = {{0.1, 1e-2}};
    CHECK_THROWS(eoc(e));
    e = {{0.1, 1e-2}, {0.05, 0.0}};
    CHECK_THROWS(eoc(e));
    e = {{0.1, 1e-2}, {0.03, 1e-3}};
    CHECK_THROWS(eoc(e));
  }
}

TEST_CASE("taylor-green reference: basics and NSE residual oracle") {
  CHECK(reference_taylor_green(0.0, 0.0, 0.0, 0.01, 1.0, 1.0).ux == 0.0);
  CHECK(reference_taylor_green(0.0, 0.0, 0.0, 0.01, 1.0, 1.0).uy == 0.0);

  // residual of the incompressible NSE at scattered points, long double FD
  auto check_residual = [](long double nu, long double U0, long double k, long double tol) {
    const long double h = 1e-3L;
    const long double pts[][3] = {{0.3L, 0.7L, 0.2L}, {0.11L, 0.52L, 0.05L}, {0.83L, 0.29L, 0.4L}};
    for (const auto& pt : pts) {
      const long double x = pt[0], y = pt[1], t = pt[2];
      auto U = [&](long double xx, long double yy, long double tt) {
        return taylor_green_ref<long double>(xx, yy, tt, nu, U0, k);
      };
      const auto s = U(x, y, t);
      const long double ux_t = d1([&](long double v) { return U(x, y, v).ux; }, t, h);
      const long double uy_t = d1([&](long double v) { return U(x, y, v).uy; }, t, h);
      const long double ux_x = d1([&](long double v) { return U(v, y, t).ux; }, x, h);
      const long double ux_y = d1([&](long double v) { return U(x, v, t).ux; }, y, h);
      const long double uy_x = d1([&](long double v) { return U(v, y, t).uy; }, x, h);
      const long double uy_y = d1([&](long double v) { return U(x, v, t).uy; }, y, h);
      const long double p_x = d1([&](long double v) { return U(v, y, t).p; }, x, h);
      const long double p_y = d1([&](long double v) { return U(x, v, t).p; }, y, h);
      const long double lap_ux = d2([&](long double v) { return U(v, y, t).ux; }, x, h) +
                                 d2([&](long double v) { return U(x, v, t).ux; }, y, h);
      const long double lap_uy = d2([&](long double v) { return U(v, y, t).uy; }, x, h) +
                                 d2([&](long double v) { return U(x, v, t).uy; }, y, h);

      const long double rx = ux_t + s.ux * ux_x + s.uy * ux_y - nu * lap_ux + p_x;
      const long double ry = uy_t + s.ux * uy_x + s.uy * uy_y - nu * lap_uy + p_y;
      const long double div = ux_x + uy_y;
      CHECK(std::fabs(static_cast<double>(rx)) < static_cast<double>(tol));
      CHECK(std::fabs(static_cast<double>(ry)) < static_cast<double>(tol));
      CHECK(std::fabs(static_cast<double>(div)) < static_cast<double>(tol));
    }
  };
  check_residual(0.01L, 1.0L, 1.0L, 1e-12L);                                  // unit wavenumber
  check_residual(0.01L, 0.1L, 2.0L * 3.141592653589793238L, 1e-8L);           // benchmark parameters
}

TEST_CASE("brinkman channel reference: ODE residual, centerline, limits") {
  const long double H = 1.0L, nu = 0.1L, K = 0.01L, F = 1.0L;
  auto u = [&](long double y) { return brinkman_channel_ref<long double>(y, H, nu, K, F); };

  // boundary conditions
  CHECK(std::fabs(static_cast<double>(u(0.0L))) < 1e-15);
  CHECK(std::fabs(static_cast<double>(u(H))) < 1e-15);

  // frozen centerline value 0.1 (1 - 1/cosh(5))
  const double centerline = static_cast<double>(u(0.5L));
  CHECK(centerline == doctest::Approx(0.0986525).epsilon(1e-6));
  CHECK(centerline == doctest::Approx(0.1 * (1.0 - 1.0 / std::cosh(5.0))).epsilon(1e-14));

  // nu u'' - (nu/K) u + F = 0 pointwise
  const long double h = 1e-4L;
  for (long double y : {0.1L, 0.27L, 0.5L, 0.66L, 0.93L}) {
    const long double r = nu * d2(u, y, h) - nu / K * u(y) + F;
    CHECK(std::fabs(static_cast<double>(r)) < 1e-8);
  }

  // K -> infinity recovers Poiseuille
  const double Kbig = 1e6 * 1.0;
  double worst = 0.0;
  for (double y = 0.05; y < 1.0; y += 0.05) {
    const double a = reference_brinkman_channel(y, 1.0, 0.1, Kbig, 1.0);
    const double b = reference_poiseuille(y, 1.0, 0.1, 1.0);
    worst = std::max(worst, std::fabs(a / b - 1.0));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("darcy reference: steady balance and transient ODE") {
  CHECK(reference_darcy_uniform(0.1, 1e-4, 0.0) == 0.0);
  CHECK(reference_darcy_uniform(0.1, 1e-4, 1.0) == doctest::Approx(1e-3).epsilon(1e-14));

  const long double nu = 0.1L, K = 1e-4L, F = 1.0L;
  auto u = [&](long double t) {
    return static_cast<long double>(K / nu * F) * (1.0L - std::exp(-nu * t / K));
  };
  const long double h = 1e-6L;
  for (long double t : {2e-4L, 1e-3L, 3e-3L}) {
    const long double r = d1(u, t, h) - (F - nu / K * u(t));
    CHECK(std::fabs(static_cast<double>(r)) < 1e-8);
  }
  CHECK(static_cast<double>(u(K / nu)) ==
        doctest::Approx(reference_darcy_transient(1e-3, 0.1, 1e-4, 1.0)).epsilon(1e-12));
}

TEST_CASE("darcy benchmark: exact steady plug and transient within 1%") {
  const auto c = BenchmarkCase::make("darcy_uniform");
  const auto r = run_darcy(c);
  CHECK(r.steady_rel_err < 1e-6);
  CHECK(r.transient_rel_err < 0.01);
}

TEST_CASE("brinkman channel simulation converges toward the cosh profile") {
  auto c = BenchmarkCase::make("brinkman_channel");
  const auto r16 = run_channel(16, c);
  const auto r32 = run_channel(32, c);
  CHECK(r32.err_u_l2 < r16.err_u_l2);
  CHECK(r32.err_u_max_rel < 0.02);
}

TEST_CASE("taylor-green at coarse resolution tracks the decay") {
  auto c = BenchmarkCase::make("taylor_green");
  const auto r = run_taylor_green(32, c);
  CHECK(std::fabs(r.decay_rate / r.decay_rate_ref - 1.0) < 0.05);
  CHECK(r.err_u_l2 < 0.05);
}

TEST_CASE("benchmark case factory rejects unknown names") {
  CHECK_THROWS(BenchmarkCase::make("enstrophy_cascade"));
}
