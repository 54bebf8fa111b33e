#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "hlbm/bench.hpp"
#include "hlbm/lattice.hpp"

using namespace hlbm::lattice;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

TEST_CASE("lattice isotropy identities hold in exact arithmetic") {
  // also enforced at compile time via static_assert
  CHECK(lattice_isotropy_holds());
  for (int q = 0; q < kQ; ++q) {
    CHECK(kCx[kOpposite[q]] == -kCx[q]);
    CHECK(kCy[kOpposite[q]] == -kCy[q]);
  }
}

TEST_CASE("discrete equilibrium moments (100 random draws)") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ur(0.5, 2.0);
  std::uniform_real_distribution<double> uu(-0.1, 0.1);
  std::uniform_real_distribution<double> uw(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double rho = ur(rng), ux = uu(rng), uy = uu(rng), w = uw(rng);
    const auto f = equilibrium(rho, ux, uy, w);
    double m0 = 0, mx = 0, my = 0, mxx = 0, mxy = 0, myy = 0;
    for (int q = 0; q < kQ; ++q) {
      m0 += f[q];
      mx += kCx[q] * f[q];
      my += kCy[q] * f[q];
      mxx += kCx[q] * kCx[q] * f[q];
      mxy += kCx[q] * kCy[q] * f[q];
      myy += kCy[q] * kCy[q] * f[q];
    }
    CHECK(std::fabs(m0 - rho) < 1e-14 * rho);
    CHECK(std::fabs(mx - rho * w * ux) < 1e-14);
    CHECK(std::fabs(my - rho * w * uy) < 1e-14);
    CHECK(std::fabs(mxx - (rho / 3.0 + rho * w * ux * w * ux)) < 1e-14);
    CHECK(std::fabs(mxy - rho * w * ux * w * uy) < 1e-14);
    CHECK(std::fabs(myy - (rho / 3.0 + rho * w * uy * w * uy)) < 1e-14);
  }
}

TEST_CASE("zero-velocity equilibrium equals the weights") {
  const double rho = 1.7;
  const auto f = equilibrium(rho, 0.0, 0.0, 0.9);
  for (int q = 0; q < kQ; ++q) CHECK(f[q] == kWeight[q] * rho);
  CHECK(f[0] == doctest::Approx(4.0 / 9.0 * rho).epsilon(1e-16));
  CHECK_THROWS_AS(equilibrium(-1.0, 0.0, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("uniform rest state is a fixed point up to rounding") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 16;
  cfg.tau = 0.8;
  Simulation sim(cfg);
  std::array<std::vector<double>, kQ> before;
  for (int q = 0; q < kQ; ++q) before[q] = sim.population(q);
  const double mass0 = sim.mass();
  sim.step(100);
  // velocity stays exactly zero by symmetry of the update
  const auto m = sim.macroscopic();
  for (std::size_t c = 0; c < m.size(); ++c) {
    CHECK(m.ux[c] == 0.0);
    CHECK(m.uy[c] == 0.0);
  }
  for (int q = 0; q < kQ; ++q)
    for (std::size_t c = 0; c < before[q].size(); ++c)
      CHECK(std::fabs(sim.population(q)[c] - before[q][c]) < 1e-14);
  CHECK(std::fabs(sim.mass() / mass0 - 1.0) < 1e-14);
}

TEST_CASE("uniform forcing gains exactly a per step (varpi = 1)") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 8;
  cfg.tau = 0.9;
  cfg.ax = 1e-5;
  Simulation sim(cfg);
  for (int n = 1; n <= 5; ++n) {
    sim.step();
    const auto m = sim.macroscopic();
    CHECK(m.ux[0] == doctest::Approx(n * cfg.ax).epsilon(1e-12));
    CHECK(m.uy[0] == doctest::Approx(0.0));
    // uniform domain stays uniform
    CHECK(m.ux[m.size() - 1] == m.ux[0]);
  }
}

TEST_CASE("damped uniform state decays geometrically, matching exp(-nu t / K) to O(dt^2)") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 8;
  cfg.tau = 0.8;
  cfg.K = 50.0;
  cfg.ux0 = 0.05;
  Simulation sim(cfg);
  const double nu = cfg.nu_lb();
  const double r = nu / cfg.K;  // per-step damping of the measured velocity

  // damping equivalence (1-varpi)/tau == nu/K by construction of varpi;
  // recovering 1-varpi from the stored value costs one ulp of 1
  const double varpi = sim.varpi_at(0, 0);
  CHECK(std::fabs((1.0 - varpi) / cfg.tau - r) < 1e-14);

  double expect = cfg.ux0;
  for (int n = 1; n <= 200; ++n) {
    sim.step();
    expect *= 1.0 - r;
    const auto m = sim.macroscopic();
    CHECK(m.ux[0] == doctest::Approx(expect).epsilon(1e-11));
    if (n == 200) {
      const double ode = cfg.ux0 * std::exp(-r * n);
      // (1-r)^n vs e^{-rn}: relative gap ~ n r^2 / 2
      CHECK(std::fabs(m.ux[0] - ode) < 1.0 * n * r * r * cfg.ux0);
    }
  }
}

TEST_CASE("macroscopic extraction of equilibrium populations") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 4;
  cfg.tau = 1.0;
  Simulation sim(cfg);
  sim.set_initial_state([](int, int, double& rho, double& ux, double& uy) {
    rho = 1.0;
    ux = 0.05;
    uy = 0.0;
  });
  const auto m = sim.macroscopic();
  CHECK(m.ux[0] == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(m.rho[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.p[0] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("halfway bounce-back wall: plane wall at rest, no net momentum flux") {
  SimulationConfig cfg;
  cfg.nx = 8;
  cfg.ny = 8;
  cfg.tau = 0.7;
  cfg.wall_y = true;
  Simulation sim(cfg);
  const double mass0 = sim.mass();
  sim.step(50);
  const auto m = sim.macroscopic();
  for (std::size_t c = 0; c < m.size(); ++c) {
    CHECK(m.ux[c] == 0.0);
    CHECK(m.uy[c] == 0.0);
  }
  CHECK(std::fabs(sim.mass() / mass0 - 1.0) < 1e-14);
}

TEST_CASE("mass conservation over a forced periodic duct with an obstacle") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 32;
  cfg.tau = 0.8;
  cfg.wall_y = true;
  cfg.solid.assign(32 * 32, 0);
  for (int j = 12; j < 20; ++j)
    for (int i = 12; i < 20; ++i) cfg.solid[j * 32 + i] = 1;
  cfg.ax = 1e-6;
  Simulation sim(cfg);
  const double mass0 = sim.mass();
  sim.step(1000);
  CHECK(std::fabs(sim.mass() / mass0 - 1.0) < 1e-13);
}

TEST_CASE("run: zero steps echoes the initial fields") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 4;
  cfg.tau = 0.8;
  cfg.rho0 = 1.25;
  cfg.ux0 = 0.01;
  cfg.steps = 0;
  const auto series = run(cfg);
  REQUIRE(series.size() == 1);
  CHECK(series[0].step == 0);
  CHECK(series[0].rho[5] == doctest::Approx(1.25).epsilon(1e-14));
  CHECK(series[0].ux[5] == doctest::Approx(0.01).epsilon(1e-14));
}

TEST_CASE("run: cadence produces the expected snapshot series") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 4;
  cfg.tau = 0.8;
  cfg.steps = 10;
  cfg.cadence = 4;
  const auto series = run(cfg);
  REQUIRE(series.size() == 4);  // steps 0, 4, 8, 10
  CHECK(series[0].step == 0);
  CHECK(series[1].step == 4);
  CHECK(series[2].step == 8);
  CHECK(series[3].step == 10);
}

TEST_CASE("instability detector reports step and cell") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 8;
  cfg.tau = 0.51;
  cfg.ax = 0.2;  // absurd forcing, blows past |u| = 0.3 quickly
  Simulation sim(cfg);
  CHECK_THROWS_AS(sim.step(100), InstabilityError);
}

TEST_CASE("config validation messages") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 4;
  cfg.tau = 0.4;
  CHECK_THROWS_WITH_AS(cfg.validate(), "relaxation time must exceed 0.5", std::invalid_argument);
  cfg.tau = 0.8;
  cfg.K = -1.0;
  try {
    cfg.validate();
    CHECK(false);
  } catch (const std::invalid_argument& ex) {
    CHECK(std::string(ex.what()).find("porosity control") != std::string::npos);
  }
  cfg.K = 1e-9;  // varpi < 0
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.K = kInf;
  cfg.solid.assign(7, 1);
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("geometry validation rejects isolated fluid cells") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 5;
  cfg.tau = 0.8;
  cfg.solid.assign(25, 1);
  cfg.solid[2 * 5 + 2] = 0;  // single fluid cell walled in
  CHECK_THROWS_AS((void)Simulation{cfg}, std::invalid_argument);
}

TEST_CASE("serial reruns are bitwise identical; thread count does not change fields") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 24;
  cfg.tau = 0.73;
  cfg.K = 80.0;
  cfg.ax = 2e-6;
  cfg.wall_y = true;

  auto run_once = [&](int threads) {
    SimulationConfig c = cfg;
    c.threads = threads;
    Simulation sim(c);
    sim.set_initial_state([](int i, int j, double& rho, double& ux, double& uy) {
      rho = 1.0 + 0.01 * std::sin(0.3 * i) * std::cos(0.2 * j);
      ux = 0.01 * std::sin(0.5 + 0.1 * j);
      uy = 0.005 * std::cos(0.1 * i);
    });
    sim.step(200);
    return sim;
  };

  const auto a = run_once(1);
  const auto b = run_once(1);
  const auto c = run_once(2);
  for (int q = 0; q < kQ; ++q) {
    CHECK(std::memcmp(a.population(q).data(), b.population(q).data(),
                      a.population(q).size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.population(q).data(), c.population(q).data(),
                      a.population(q).size() * sizeof(double)) == 0);
  }
}

TEST_CASE("per-cell force fields match the uniform path when constant") {
  SimulationConfig cfg;
  cfg.nx = cfg.ny = 12;
  cfg.tau = 0.8;
  cfg.ax = 3e-6;
  cfg.ay = -1e-6;
  Simulation a(cfg);

  SimulationConfig cfg2 = cfg;
  cfg2.ax_field.assign(12 * 12, cfg.ax);
  cfg2.ay_field.assign(12 * 12, cfg.ay);
  Simulation b(cfg2);

  a.step(50);
  b.step(50);
  for (int q = 0; q < kQ; ++q)
    CHECK(std::memcmp(a.population(q).data(), b.population(q).data(),
                      a.population(q).size() * sizeof(double)) == 0);
}

TEST_CASE("poiseuille channel: parabolic profile at moderate resolution") {
  // magic tau: halfway bounce-back walls sit exactly on the boundary for
  // parabolic profiles
  const int ny = 32;
  auto c = hlbm::bench::BenchmarkCase::make("poiseuille");
  const auto r = hlbm::bench::run_channel(ny, c);
  CHECK(r.err_u_max_rel < 1e-3);
}
