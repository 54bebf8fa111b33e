#include "hlbm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hlbm/config.hpp"
#include "hlbm/lattice.hpp"

namespace hlbm::bench {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct Units {
  double dx, dt;
  double to_lb_u(double u) const { return u * dt / dx; }
  double to_phys_u(double u) const { return u * dx / dt; }
  double to_phys_p(double p) const { return p * dx * dx / (dt * dt); }
};

// Diffusive coupling: fixed tau_lb, dt = nu_lb dx^2 / nu.
Units units_for(int n, double extent, double tau_lb, double nu) {
  const double dx = extent / n;
  const double nu_lb = (tau_lb - 0.5) / 3.0;
  return {dx, nu_lb * dx * dx / nu};
}

}  // namespace

double reference_darcy_uniform(double nu, double K, double F) { return K / nu * F; }

double reference_darcy_transient(double t, double nu, double K, double F) {
  return K / nu * F * (1.0 - std::exp(-nu * t / K));
}

std::vector<double> eoc(std::span<const std::pair<double, double>> h_err) {
  if (h_err.size() < 2) throw std::invalid_argument("eoc: need at least two (h, error) entries");
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < h_err.size(); ++i) {
    const auto [h0, e0] = h_err[i];
    const auto [h1, e1] = h_err[i + 1];
    if (!(e0 > 0.0) || !(e1 > 0.0)) throw std::invalid_argument("eoc: errors must be positive");
    const double ratio = h0 / h1;
    if (std::fabs(ratio - 2.0) > 1e-9 * ratio)
      throw std::invalid_argument("eoc: ladder must refine by factor 2");
    orders.push_back(std::log2(e0 / e1));
  }
  return orders;
}

BenchmarkCase BenchmarkCase::make(const std::string& name) {
  BenchmarkCase c;
  c.name = name;
  if (name == "taylor_green") {
    c.nu = 0.01;
    c.U0 = 0.1;
    c.k = 2.0 * 3.14159265358979323846;
    c.H = 1.0;
    c.T_end = 0.9;
    c.tau_lb = 0.8;
    c.ladder = {32, 64, 128};
  } else if (name == "brinkman_channel") {
    c.nu = 0.1;
    c.K = 0.01;
    c.F = 1.0;
    c.H = 1.0;
    c.Fy = 0.5;
    c.tau_lb = 0.5 + std::sqrt(3.0) / 4.0;  // wall exactly halfway for parabolic profiles
    c.ladder = {16, 32, 64};
  } else if (name == "poiseuille") {
    c.nu = 0.1;
    c.K = std::numeric_limits<double>::infinity();
    c.F = 1.0;
    c.H = 1.0;
    c.tau_lb = 0.5 + std::sqrt(3.0) / 4.0;
    c.ladder = {16, 32, 64};
  } else if (name == "darcy_uniform") {
    c.nu = 0.1;
    c.K = 1e-4;
    c.F = 1.0;
    c.H = 1.0;
    c.tau_lb = 0.8;
    c.ladder = {8};
  } else {
    throw std::invalid_argument("unknown benchmark case: " + name +
                                " (expected taylor_green, brinkman_channel, darcy_uniform or poiseuille)");
  }
  return c;
}

TaylorGreenRun run_taylor_green(int n, const BenchmarkCase& c) {
  const Units un = units_for(n, c.H, c.tau_lb, c.nu);
  const long steps = std::lround(c.T_end / un.dt);

  lattice::SimulationConfig cfg;
  cfg.nx = cfg.ny = n;
  cfg.tau = c.tau_lb;
  lattice::Simulation sim(cfg);
  sim.set_initial_state([&](int i, int j, double& rho, double& ux, double& uy) {
    const double x = (i + 0.5) * un.dx;
    const double y = (j + 0.5) * un.dx;
    const auto r = reference_taylor_green(x, y, 0.0, c.nu, c.U0, c.k);
    rho = 1.0 + 3.0 * r.p * (un.dt / un.dx) * (un.dt / un.dx);
    ux = un.to_lb_u(r.ux);
    uy = un.to_lb_u(r.uy);
  });
  sim.add_shear_nonequilibrium([&](int i, int j, double& dxux, double& dyux, double& dxuy, double& dyuy) {
    const double x = (i + 0.5) * un.dx;
    const double y = (j + 0.5) * un.dx;
    const double kc = c.k;
    // lattice-unit gradients: du_lb/dx_lb = (du/dx) dt
    dxux = c.U0 * kc * std::sin(kc * x) * std::sin(kc * y) * un.dt;
    dyux = -c.U0 * kc * std::cos(kc * x) * std::cos(kc * y) * un.dt;
    dxuy = c.U0 * kc * std::cos(kc * x) * std::cos(kc * y) * un.dt;
    dyuy = -c.U0 * kc * std::sin(kc * x) * std::sin(kc * y) * un.dt;
  });

  auto kinetic_energy = [&]() {
    const auto m = sim.macroscopic();
    long double ke = 0.0L;
    for (std::size_t cidx = 0; cidx < m.size(); ++cidx)
      ke += m.ux[cidx] * m.ux[cidx] + m.uy[cidx] * m.uy[cidx];
    return static_cast<double>(ke);
  };

  const long half = steps / 2;
  sim.step(half);
  const double ke_half = kinetic_energy();
  sim.step(steps - half);
  const double ke_end = kinetic_energy();

  TaylorGreenRun out;
  out.steps = steps;
  out.t_end = steps * un.dt;
  const double dt_phys = (steps - half) * un.dt;
  out.decay_rate = -std::log(ke_end / ke_half) / (2.0 * dt_phys);
  out.decay_rate_ref = 2.0 * c.nu * c.k * c.k;

  const auto m = sim.macroscopic();
  long double num_u = 0.0L, den_u = 0.0L;
  double max_diff = 0.0, max_ref = 0.0;
  long double p_sim_mean = 0.0L, p_ref_mean = 0.0L;
  std::vector<double> p_sim(m.size()), p_ref(m.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t cidx = m.index(i, j);
      const double x = (i + 0.5) * un.dx;
      const double y = (j + 0.5) * un.dx;
      const auto r = reference_taylor_green(x, y, out.t_end, c.nu, c.U0, c.k);
      const double ux = un.to_phys_u(m.ux[cidx]);
      const double uy = un.to_phys_u(m.uy[cidx]);
      const double dx2 = (ux - r.ux) * (ux - r.ux) + (uy - r.uy) * (uy - r.uy);
      num_u += dx2;
      den_u += r.ux * r.ux + r.uy * r.uy;
      max_diff = std::max(max_diff, std::sqrt(dx2));
      max_ref = std::max(max_ref, std::hypot(r.ux, r.uy));
      p_sim[cidx] = un.to_phys_p(m.p[cidx]);
      p_ref[cidx] = r.p;
      p_sim_mean += p_sim[cidx];
      p_ref_mean += p_ref[cidx];
    }
  out.err_u_l2 = std::sqrt(static_cast<double>(num_u / den_u));
  out.err_u_max = max_diff / max_ref;
  const double ps_mean = static_cast<double>(p_sim_mean) / m.size();
  const double pr_mean = static_cast<double>(p_ref_mean) / m.size();
  long double num_p = 0.0L, den_p = 0.0L;
  for (std::size_t cidx = 0; cidx < m.size(); ++cidx) {
    const double ds = (p_sim[cidx] - ps_mean) - (p_ref[cidx] - pr_mean);
    num_p += ds * ds;
    den_p += (p_ref[cidx] - pr_mean) * (p_ref[cidx] - pr_mean);
  }
  out.err_p_l2 = std::sqrt(static_cast<double>(num_p / den_p));
  return out;
}

ChannelRun run_channel(int ny, const BenchmarkCase& c) {
  const Units un = units_for(ny, c.H, c.tau_lb, c.nu);
  const int nx = 4;
  const double two_pi = 2.0 * 3.14159265358979323846;

  lattice::SimulationConfig cfg;
  cfg.nx = nx;
  cfg.ny = ny;
  cfg.tau = c.tau_lb;
  cfg.wall_y = true;
  cfg.ax = c.F * un.dt * un.dt / un.dx;
  cfg.K = std::isinf(c.K) ? c.K : c.K / (un.dx * un.dx);
  if (c.Fy != 0.0) {
    cfg.ay_field.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    for (int j = 0; j < ny; ++j) {
      const double y = (j + 0.5) * un.dx;
      const double fy = c.Fy * std::sin(two_pi * y / c.H);
      for (int i = 0; i < nx; ++i) cfg.ay_field[static_cast<std::size_t>(j) * nx + i] = fy * un.dt * un.dt / un.dx;
    }
  }
  lattice::Simulation sim(cfg);

  // March to steady state: per-step velocity change below 1e-13 of max |u|.
  const long stride = 256;
  const long max_steps = 40000000;
  std::vector<double> prev(static_cast<std::size_t>(nx) * ny, 0.0);
  long steps = 0;
  double residual = 1.0;
  while (steps < max_steps) {
    sim.step(stride);
    steps += stride;
    const auto m = sim.macroscopic();
    double du = 0.0, umax = 0.0;
    for (std::size_t i = 0; i < prev.size(); ++i) {
      du = std::max(du, std::fabs(m.ux[i] - prev[i]));
      umax = std::max(umax, std::fabs(m.ux[i]));
      prev[i] = m.ux[i];
    }
    residual = du / (umax > 0 ? umax : 1.0) / stride;
    if (residual < 1e-13) break;
  }
  if (residual >= 1e-13)
    throw std::runtime_error("channel run did not reach steady state at ny = " + std::to_string(ny));

  const bool poiseuille = std::isinf(c.K);
  const auto m = sim.macroscopic();
  ChannelRun out;
  out.steps = steps;
  long double num = 0.0L, den = 0.0L;
  double max_diff = 0.0, max_ref = 0.0;
  long double p_sim_mean = 0.0L, p_ref_mean = 0.0L;
  std::vector<double> p_sim(ny), p_ref(ny);
  for (int j = 0; j < ny; ++j) {
    const double y = (j + 0.5) * un.dx;
    const double u_sim = un.to_phys_u(m.ux[m.index(0, j)]);
    const double u_ref = poiseuille ? poiseuille_ref<double>(y, c.H, c.nu, c.F)
                                    : brinkman_channel_ref<double>(y, c.H, c.nu, c.K, c.F);
    out.y.push_back(y);
    out.u_sim.push_back(u_sim);
    out.u_ref.push_back(u_ref);
    num += (u_sim - u_ref) * (u_sim - u_ref);
    den += u_ref * u_ref;
    max_diff = std::max(max_diff, std::fabs(u_sim - u_ref));
    max_ref = std::max(max_ref, std::fabs(u_ref));
    p_sim[j] = un.to_phys_p(m.p[m.index(0, j)]);
    p_ref[j] = c.Fy == 0.0 ? 0.0 : -c.Fy * c.H / two_pi * std::cos(two_pi * y / c.H);
    p_sim_mean += p_sim[j];
    p_ref_mean += p_ref[j];
  }
  out.err_u_l2 = std::sqrt(static_cast<double>(num / den));
  out.err_u_max_rel = max_diff / max_ref;
  // Pressure defined up to a constant: compare mean-free profiles. With no
  // transverse force the reference is uniform and the error is normalized
  // by the F*H pressure scale instead.
  const double psm = static_cast<double>(p_sim_mean) / ny;
  const double prm = static_cast<double>(p_ref_mean) / ny;
  long double pnum = 0.0L, pden = 0.0L;
  for (int j = 0; j < ny; ++j) {
    const double dp = (p_sim[j] - psm) - (p_ref[j] - prm);
    pnum += dp * dp;
    pden += (p_ref[j] - prm) * (p_ref[j] - prm);
  }
  const double scale = pden > 0.0L ? std::sqrt(static_cast<double>(pden)) : c.F * c.H * std::sqrt(1.0 * ny);
  out.err_p_l2 = std::sqrt(static_cast<double>(pnum)) / scale;
  return out;
}

DarcyRun run_darcy(const BenchmarkCase& c) {
  if (std::isinf(c.K)) throw std::invalid_argument("darcy_uniform needs a finite permeability");
  // Uniform fields: grid extent is irrelevant, but dx sets K_lb and the
  // transient step resolution.
  const int n = 8;
  const double dx = 1.0 / 256.0;
  const double nu_lb = (c.tau_lb - 0.5) / 3.0;
  const double dt = nu_lb * dx * dx / c.nu;

  lattice::SimulationConfig cfg;
  cfg.nx = cfg.ny = n;
  cfg.tau = c.tau_lb;
  cfg.K = c.K / (dx * dx);
  cfg.ax = c.F * dt * dt / dx;
  lattice::Simulation sim(cfg);

  DarcyRun out;
  const double t_star = c.K / c.nu;
  const long n_star = std::max(1L, std::lround(t_star / dt));
  out.transient_step = n_star;
  sim.step(n_star);
  {
    const auto m = sim.macroscopic();
    const double u_sim = m.ux[0] * dx / dt;
    const double u_ref = reference_darcy_transient(n_star * dt, c.nu, c.K, c.F);
    out.transient_rel_err = std::fabs(u_sim - u_ref) / u_ref;
  }
  sim.step(40 * n_star);
  {
    const auto m = sim.macroscopic();
    const double u_sim = m.ux[0] * dx / dt;
    const double u_ref = reference_darcy_uniform(c.nu, c.K, c.F);
    out.steady_rel_err = std::fabs(u_sim - u_ref) / u_ref;
  }
  return out;
}

std::vector<KSweepPoint> boundary_layer_sweep(int ny, std::span<const double> Ks,
                                              const BenchmarkCase& base) {
  std::vector<KSweepPoint> out;
  for (const double K : Ks) {
    BenchmarkCase c = base;
    c.K = K;
    c.Fy = 0.0;  // width measurement wants the plain plug profile
    const auto run = run_channel(ny, c);
    const double plug = K / c.nu * c.F;
    const double target = 0.95 * plug;
    // First wall-side crossing of the 95% level, linear interpolation with
    // the no-slip anchor at y = 0.
    double width = 0.0;
    double y_prev = 0.0, u_prev = 0.0;
    bool found = false;
    for (std::size_t j = 0; j < run.y.size() && !found; ++j) {
      if (run.u_sim[j] >= target) {
        width = y_prev + (target - u_prev) / (run.u_sim[j] - u_prev) * (run.y[j] - y_prev);
        found = true;
      }
      y_prev = run.y[j];
      u_prev = run.u_sim[j];
    }
    if (!found) throw std::runtime_error("boundary layer sweep: profile never reaches 95% of the plug");
    KSweepPoint pt;
    pt.K = K;
    pt.width = width;
    pt.predicted = 3.0 * std::sqrt(K);
    pt.rel_dev = std::fabs(width - pt.predicted) / pt.predicted;
    out.push_back(pt);
  }
  return out;
}

ErrorReport run_benchmark(const BenchmarkCase& c) {
  ErrorReport rep;
  rep.case_name = c.name;
  if (c.name == "taylor_green") {
    double decay_err_finest = 0.0;
    for (const int n : c.ladder) {
      const double t0 = now_seconds();
      const auto r = run_taylor_green(n, c);
      LadderPoint p;
      p.n = n;
      p.steps = r.steps;
      p.err_u_l2 = r.err_u_l2;
      p.err_u_max = r.err_u_max;
      p.err_p_l2 = r.err_p_l2;
      p.seconds = now_seconds() - t0;
      rep.points.push_back(p);
      decay_err_finest = std::fabs(r.decay_rate / r.decay_rate_ref - 1.0);
    }
    rep.extra = decay_err_finest;
  } else if (c.name == "brinkman_channel" || c.name == "poiseuille") {
    for (const int n : c.ladder) {
      const double t0 = now_seconds();
      const auto r = run_channel(n, c);
      LadderPoint p;
      p.n = n;
      p.steps = r.steps;
      p.err_u_l2 = r.err_u_l2;
      p.err_u_max = r.err_u_max_rel;
      p.err_p_l2 = r.err_p_l2;
      p.seconds = now_seconds() - t0;
      rep.points.push_back(p);
    }
  } else if (c.name == "darcy_uniform") {
    const double t0 = now_seconds();
    const auto r = run_darcy(c);
    LadderPoint p;
    p.n = c.ladder.empty() ? 8 : c.ladder[0];
    p.err_u_l2 = r.steady_rel_err;
    p.err_u_max = r.steady_rel_err;
    p.seconds = now_seconds() - t0;
    rep.points.push_back(p);
    rep.extra = r.transient_rel_err;
  } else {
    throw std::invalid_argument("unknown benchmark case: " + c.name);
  }

  if (rep.points.size() >= 2) {
    std::vector<std::pair<double, double>> hu, hp;
    for (const auto& p : rep.points) {
      hu.emplace_back(1.0 / p.n, p.err_u_l2);
      hp.emplace_back(1.0 / p.n, p.err_p_l2);
    }
    rep.eoc_u = eoc(hu);
    rep.eoc_p = eoc(hp);
  }

  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / v.size();
  };
  if (c.name == "taylor_green") {
    rep.within_bands = rep.extra < 0.01 && std::fabs(mean(rep.eoc_u) - 2.0) <= 0.3;
  } else if (c.name == "brinkman_channel") {
    rep.within_bands = rep.points.back().err_u_max < 1e-3 && mean(rep.eoc_u) >= 1.0 &&
                       std::fabs(mean(rep.eoc_p) - 2.0) <= 0.3;
  } else if (c.name == "poiseuille") {
    rep.within_bands = rep.points.back().err_u_max < 1e-3;
  } else if (c.name == "darcy_uniform") {
    rep.within_bands = rep.points.back().err_u_l2 < 1e-6 && rep.extra < 0.01;
  }
  return rep;
}

std::string ErrorReport::summary() const {
  std::ostringstream os;
  os << "case " << case_name << "\n";
  os << "  n      steps        err_u_l2      err_u_max     err_p_l2      seconds\n";
  for (const auto& p : points) {
    os << "  " << p.n << "  " << p.steps << "  " << p.err_u_l2 << "  " << p.err_u_max << "  "
       << p.err_p_l2 << "  " << p.seconds << "\n";
  }
  if (!eoc_u.empty()) {
    os << "  EOC(u):";
    for (double e : eoc_u) os << " " << e;
    os << "\n";
  }
  if (!eoc_p.empty()) {
    os << "  EOC(p):";
    for (double e : eoc_p) os << " " << e;
    os << "\n";
  }
  if (case_name == "taylor_green") os << "  decay-rate rel. error: " << extra << "\n";
  if (case_name == "darcy_uniform") os << "  transient rel. error: " << extra << "\n";
  os << "  within bands: " << (within_bands ? "yes" : "no") << "\n";
  return os.str();
}

std::string ErrorReport::csv() const {
  std::ostringstream os;
  os << "case,n,steps,err_u_l2,err_u_max,err_p_l2,seconds\n";
  for (const auto& p : points)
    os << case_name << ',' << p.n << ',' << p.steps << ',' << config::format_g17(p.err_u_l2)
       << ',' << config::format_g17(p.err_u_max) << ',' << config::format_g17(p.err_p_l2) << ','
       << config::format_g17(p.seconds) << "\n";
  return os.str();
}

}  // namespace hlbm::bench
