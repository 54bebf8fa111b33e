#include "hlbm/lattice.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

namespace hlbm::lattice {

namespace {

int env_thread_cap() {
  const char* e = std::getenv("HLBM_THREADS");
  if (!e || !*e) return std::numeric_limits<int>::max();
  const int v = std::atoi(e);
  return v <= 1 ? 1 : v;
}

// Contiguous chunks in index order; deterministic for any chunk count since
// cells are updated independently. fn(t, begin, end) with chunk id t.
template <class Fn>
void parallel_chunks(std::size_t n, int threads, std::size_t min_grain, const Fn& fn) {
  if (threads <= 1 || n < 2 * min_grain) {
    fn(0, 0, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const std::size_t b = std::min(n, t * chunk);
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, t, b, e] { fn(t, b, e); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::array<double, kQ> equilibrium(double rho, double ux, double uy, double varpi) {
  if (!(rho > 0.0)) throw std::invalid_argument("equilibrium: density must be positive");
  const double ex = varpi * ux;
  const double ey = varpi * uy;
  const double esq = 1.5 * (ex * ex + ey * ey);
  std::array<double, kQ> f;
  for (int q = 0; q < kQ; ++q) {
    const double cu = 3.0 * (kCx[q] * ex + kCy[q] * ey);
    f[q] = kWeight[q] * rho * (1.0 + cu + 0.5 * cu * cu - esq);
  }
  return f;
}

void SimulationConfig::validate() const {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid dimensions must be positive");
  if (!(tau > 0.5)) throw std::invalid_argument("relaxation time must exceed 0.5");
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  if (!solid.empty() && solid.size() != n)
    throw std::invalid_argument("solid mask size does not match the grid");
  if (!K_field.empty() && K_field.size() != n)
    throw std::invalid_argument("per-cell permeability size does not match the grid");
  if ((!ax_field.empty() && ax_field.size() != n) || (!ay_field.empty() && ay_field.size() != n))
    throw std::invalid_argument("per-cell force size does not match the grid");
  if (!(rho0 > 0.0)) throw std::invalid_argument("initial density must be positive");
  if (steps < 0 || cadence < 0) throw std::invalid_argument("steps and cadence must be nonnegative");

  const double nu = nu_lb();
  auto check_K = [&](double k, std::size_t cell) {
    if (std::isinf(k) && k > 0.0) return;
    if (!(k > 0.0))
      throw std::invalid_argument("permeability K must be positive or inf (porosity control varpi = 1 - nu*tau/K)");
    const double varpi = 1.0 - nu * tau / k;
    if (varpi < 0.0)
      throw std::invalid_argument("porosity control varpi = 1 - nu*tau/K is negative at cell " +
                                  std::to_string(cell) + " (K too small for this tau)");
  };
  if (K_field.empty()) {
    check_K(K, 0);
  } else {
    for (std::size_t c = 0; c < K_field.size(); ++c) check_K(K_field[c], c);
  }
}

Simulation::Simulation(SimulationConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  nx_ = cfg_.nx;
  ny_ = cfg_.ny;
  ncells_ = static_cast<std::size_t>(nx_) * ny_;
  inv_tau_ = 1.0 / cfg_.tau;
  guo_pref_ = 1.0 - 0.5 * inv_tau_;
  rho_ref_ = cfg_.rho0;

  solid_ = cfg_.solid.empty() ? std::vector<std::uint8_t>(ncells_, 0) : cfg_.solid;

  // Geometry validation: something to simulate, no isolated fluid cells.
  std::size_t fluid = 0;
  for (auto s : solid_) fluid += (s == 0);
  if (fluid == 0) throw std::invalid_argument("geometry: no fluid cells");
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) {
      if (solid_[index(i, j)]) continue;
      bool neighbor = false;
      for (int q = 1; q < kQ && !neighbor; ++q) {
        int si = i + kCx[q], sj = j + kCy[q];
        if (cfg_.wall_x && (si < 0 || si >= nx_)) continue;
        if (cfg_.wall_y && (sj < 0 || sj >= ny_)) continue;
        si = (si + nx_) % nx_;
        sj = (sj + ny_) % ny_;
        neighbor = solid_[index(si, sj)] == 0;
      }
      if (!neighbor)
        throw std::invalid_argument("geometry: isolated fluid cell at (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
    }

  const double nu = cfg_.nu_lb();
  varpi_.resize(ncells_);
  for (std::size_t c = 0; c < ncells_; ++c) {
    const double k = cfg_.K_field.empty() ? cfg_.K : cfg_.K_field[c];
    varpi_[c] = std::isinf(k) ? 1.0 : 1.0 - nu * cfg_.tau / k;
  }

  kernel_kind_ = kernels::resolve(kernels::kind_from_env(cfg_.kernel));
  collide_fn_ = kernels::select(kernel_kind_);
  threads_ = std::min(cfg_.threads < 1 ? 1 : cfg_.threads, env_thread_cap());

  for (int q = 0; q < kQ; ++q) {
    f_[q].assign(ncells_, 0.0);
    fpost_[q].assign(ncells_, 0.0);
  }
  set_initial_state([this](int, int, double& r, double& ux, double& uy) {
    r = cfg_.rho0;
    ux = cfg_.ux0;
    uy = cfg_.uy0;
  });
}

void Simulation::set_initial_state(
    const std::function<void(int, int, double&, double&, double&)>& fn) {
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) {
      const std::size_t c = index(i, j);
      double rho = cfg_.rho0, ux = 0.0, uy = 0.0;
      if (!solid_[c]) fn(i, j, rho, ux, uy);
      const double w = varpi_[c];
      const double axc = cfg_.ax_field.empty() ? cfg_.ax : cfg_.ax_field[c];
      const double ayc = cfg_.ay_field.empty() ? cfg_.ay : cfg_.ay_field[c];
      auto feq = equilibrium(rho, ux, uy, w);
      // First-moment shift so the measured velocity (with half-force
      // correction and the varpi prefactor) equals the requested ux, uy.
      const double shift_x = solid_[c] ? 0.0 : rho * (ux - w * ux) - 0.5 * rho * axc;
      const double shift_y = solid_[c] ? 0.0 : rho * (uy - w * uy) - 0.5 * rho * ayc;
      for (int q = 0; q < kQ; ++q)
        f_[q][c] = feq[q] + 3.0 * kWeight[q] * (kCx[q] * shift_x + kCy[q] * shift_y);
    }
  step_ = 0;
}

void Simulation::add_shear_nonequilibrium(
    const std::function<void(int, int, double&, double&, double&, double&)>& grad) {
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) {
      const std::size_t c = index(i, j);
      if (solid_[c]) continue;
      double rho = 0.0;
      for (int q = 0; q < kQ; ++q) rho += f_[q][c];
      double dxux = 0, dyux = 0, dxuy = 0, dyuy = 0;
      grad(i, j, dxux, dyux, dxuy, dyuy);
      const double g[2][2] = {{dxux, dyux}, {dxuy, dyuy}};  // g[a][b] = du_a/dx_b
      for (int q = 0; q < kQ; ++q) {
        const int cv[2] = {kCx[q], kCy[q]};
        double contr = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            contr += (cv[a] * cv[b] - (a == b ? kCs2 : 0.0)) * g[a][b];
        f_[q][c] -= 3.0 * kWeight[q] * cfg_.tau * rho * contr;
      }
    }
}

void Simulation::collide() {
  const double* fptr[kQ];
  double* pptr[kQ];
  for (int q = 0; q < kQ; ++q) {
    fptr[q] = f_[q].data();
    pptr[q] = fpost_[q].data();
  }
  kernels::CollideArgs args;
  args.f = fptr;
  args.fpost = pptr;
  args.varpi = varpi_.data();
  args.ax_field = cfg_.ax_field.empty() ? nullptr : cfg_.ax_field.data();
  args.ay_field = cfg_.ay_field.empty() ? nullptr : cfg_.ay_field.data();
  args.ax = cfg_.ax;
  args.ay = cfg_.ay;
  args.inv_tau = inv_tau_;
  args.guo_pref = guo_pref_;

  double max_u2 = 0.0;
  double rho_sum = 0.0;
  if (threads_ <= 1) {
    args.begin = 0;
    args.end = ncells_;
    const auto s = collide_fn_(args);
    max_u2 = s.max_u2;
    rho_sum = s.rho_sum;
  } else {
    std::vector<kernels::CollideStats> stats(threads_);
    parallel_chunks(ncells_, threads_, 4096, [&](int t, std::size_t b, std::size_t e) {
      kernels::CollideArgs local = args;
      local.begin = b;
      local.end = e;
      stats[t] = collide_fn_(local);
    });
    for (const auto& s : stats) {
      max_u2 = s.max_u2 > max_u2 ? s.max_u2 : max_u2;
      rho_sum += s.rho_sum;
    }
  }
  if (!(max_u2 <= 0.09) || !std::isfinite(rho_sum)) locate_and_throw(max_u2);
}

void Simulation::locate_and_throw(double max_u2) const {
  int bi = 0, bj = 0;
  double worst = -1.0;
  for (int j = 0; j < ny_; ++j)
    for (int i = 0; i < nx_; ++i) {
      const std::size_t c = index(i, j);
      if (solid_[c]) continue;
      double rho = 0.0, mx = 0.0, my = 0.0;
      bool finite = true;
      for (int q = 0; q < kQ; ++q) {
        const double v = f_[q][c];
        finite = finite && std::isfinite(v);
        rho += v;
        mx += kCx[q] * v;
        my += kCy[q] * v;
      }
      const double u2 = (mx * mx + my * my) / (rho * rho);
      if (!finite || !std::isfinite(u2)) {
        throw InstabilityError(step_, i, j, std::sqrt(std::fabs(u2)),
                               "non-finite population at step " + std::to_string(step_) + ", cell (" +
                                   std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (u2 > worst) {
        worst = u2;
        bi = i;
        bj = j;
      }
    }
  throw InstabilityError(step_, bi, bj, std::sqrt(std::max(worst, max_u2)),
                         "velocity " + std::to_string(std::sqrt(std::max(worst, max_u2))) +
                             " exceeds 0.3 lattice units at step " + std::to_string(step_) + ", cell (" +
                             std::to_string(bi) + ", " + std::to_string(bj) + ")");
}

void Simulation::stream() {
  auto rows = [this](std::size_t j0, std::size_t j1) {
    for (std::size_t j = j0; j < j1; ++j)
      for (int i = 0; i < nx_; ++i) {
        const std::size_t c = index(i, static_cast<int>(j));
        if (solid_[c]) continue;
        for (int q = 0; q < kQ; ++q) {
          int si = i - kCx[q];
          int sj = static_cast<int>(j) - kCy[q];
          bool bounce = false;
          if (si < 0 || si >= nx_) {
            if (cfg_.wall_x)
              bounce = true;
            else
              si = (si + nx_) % nx_;
          }
          if (sj < 0 || sj >= ny_) {
            if (cfg_.wall_y)
              bounce = true;
            else
              sj = (sj + ny_) % ny_;
          }
          if (!bounce && solid_[index(si, sj)]) bounce = true;
          f_[q][c] = bounce ? fpost_[kOpposite[q]][c] : fpost_[q][index(si, sj)];
        }
      }
  };
  parallel_chunks(static_cast<std::size_t>(ny_), threads_, 8,
                  [&](int, std::size_t b, std::size_t e) { rows(b, e); });
}

void Simulation::step(long n) {
  for (long s = 0; s < n; ++s) {
    collide();
    stream();
    ++step_;
  }
}

MacroFields Simulation::macroscopic() const {
  MacroFields m;
  m.nx = nx_;
  m.ny = ny_;
  m.step = step_;
  m.rho_ref = rho_ref_;
  m.rho.assign(ncells_, rho_ref_);
  m.ux.assign(ncells_, 0.0);
  m.uy.assign(ncells_, 0.0);
  m.p.assign(ncells_, 0.0);
  for (std::size_t c = 0; c < ncells_; ++c) {
    if (solid_[c]) continue;
    double rho = 0.0, mx = 0.0, my = 0.0;
    for (int q = 0; q < kQ; ++q) {
      const double v = f_[q][c];
      rho += v;
      mx += kCx[q] * v;
      my += kCy[q] * v;
    }
    const double axc = cfg_.ax_field.empty() ? cfg_.ax : cfg_.ax_field[c];
    const double ayc = cfg_.ay_field.empty() ? cfg_.ay : cfg_.ay_field[c];
    m.rho[c] = rho;
    m.ux[c] = mx / rho + 0.5 * axc;
    m.uy[c] = my / rho + 0.5 * ayc;
    m.p[c] = kCs2 * (rho - rho_ref_);
  }
  return m;
}

double Simulation::mass() const {
  long double total = 0.0L;
  for (std::size_t c = 0; c < ncells_; ++c) {
    if (solid_[c]) continue;
    for (int q = 0; q < kQ; ++q) total += f_[q][c];
  }
  return static_cast<double>(total);
}

std::vector<MacroFields> run(const SimulationConfig& cfg) {
  return run(cfg, nullptr);
}

std::vector<MacroFields> run(
    const SimulationConfig& cfg,
    const std::function<void(int, int, double&, double&, double&)>& initial_state) {
  Simulation sim(cfg);
  if (initial_state) sim.set_initial_state(initial_state);
  std::vector<MacroFields> series;
  if (cfg.cadence > 0) series.push_back(sim.macroscopic());
  long done = 0;
  while (done < cfg.steps) {
    const long chunk = cfg.cadence > 0 ? std::min(cfg.cadence, cfg.steps - done) : cfg.steps;
    sim.step(chunk);
    done += chunk;
    series.push_back(sim.macroscopic());
  }
  if (series.empty()) series.push_back(sim.macroscopic());
  return series;
}

}  // namespace hlbm::lattice
