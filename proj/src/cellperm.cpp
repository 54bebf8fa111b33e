#include "hlbm/cellperm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hlbm/config.hpp"
#include "hlbm/lattice.hpp"

namespace hlbm::cellperm {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void UnitCellSpec::validate() const {
  if (!(delta > 0.0))
    throw std::invalid_argument("unit cell: delta <= 0 is degenerate (no obstacle, no steady state)");
  if (!(delta < 1.0))
    throw std::invalid_argument("unit cell: delta >= 1 is degenerate (obstacle touches the cell boundary)");
  if (resolution < 16) throw std::invalid_argument("unit cell: resolution must be at least 16");
  if (!(tau > 0.5)) throw std::invalid_argument("unit cell: relaxation time must exceed 0.5");
  if (!(residual_tol > 0.0)) throw std::invalid_argument("unit cell: residual tolerance must be positive");
}

CellSolution solve_unit_cell(const UnitCellSpec& spec, int axis) {
  spec.validate();
  if (axis != 0 && axis != 1) throw std::invalid_argument("unit cell: axis must be 0 or 1");

  const int n = spec.resolution;
  const double nu_lb = (spec.tau - 0.5) / 3.0;
  // Force amplitude sized from a rough permeability guess so the steady
  // lattice velocity stays near target_u (Stokes regime).
  double a_lb = spec.target_u * nu_lb / (0.15 * n * n);

  for (int attempt = 0; attempt < 4; ++attempt) {
    lattice::SimulationConfig cfg;
    cfg.nx = cfg.ny = n;
    cfg.tau = spec.tau;
    cfg.solid = config::disk_mask(n, n, 0.5, 0.5, spec.delta);
    cfg.ax = axis == 0 ? a_lb : 0.0;
    cfg.ay = axis == 1 ? a_lb : 0.0;
    lattice::Simulation sim(cfg);

    const std::size_t ncells = static_cast<std::size_t>(n) * n;
    std::vector<double> prev_ux(ncells, 0.0), prev_uy(ncells, 0.0);
    std::vector<double> residual_history;
    double residual = 1.0;
    long steps = 0;
    bool converged = false;
    while (steps < spec.max_steps) {
      sim.step(spec.check_stride);
      steps += spec.check_stride;
      const auto m = sim.macroscopic();
      double du = 0.0, umax = 0.0;
      for (std::size_t c = 0; c < ncells; ++c) {
        du = std::max(du, std::max(std::fabs(m.ux[c] - prev_ux[c]), std::fabs(m.uy[c] - prev_uy[c])));
        umax = std::max(umax, std::max(std::fabs(m.ux[c]), std::fabs(m.uy[c])));
      }
      prev_ux = m.ux;
      prev_uy = m.uy;
      residual = du / (umax > 0.0 ? umax : 1.0) / spec.check_stride;
      residual_history.push_back(residual);
      if (residual < spec.residual_tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      std::ostringstream os;
      os << "unit cell solve (axis " << axis << ", delta " << spec.delta << ", n " << n
         << ") did not reach residual " << spec.residual_tol << " in " << spec.max_steps
         << " steps; last residuals:";
      const std::size_t tail = std::min<std::size_t>(6, residual_history.size());
      for (std::size_t i = residual_history.size() - tail; i < residual_history.size(); ++i)
        os << " " << residual_history[i];
      throw std::runtime_error(os.str());
    }

    const auto m = sim.macroscopic();
    double umax = 0.0;
    for (std::size_t c = 0; c < ncells; ++c)
      umax = std::max(umax, std::hypot(m.ux[c], m.uy[c]));
    if (umax > 2.0 * spec.target_u) {
      a_lb *= spec.target_u / umax;  // keep the solve in the Stokes regime
      continue;
    }

    CellSolution sol;
    sol.n = n;
    sol.axis = axis;
    sol.solid = cfg.solid;
    sol.residual = residual;
    sol.steps = steps;
    sol.max_u_lattice = umax;
    // v = u_lb * nu_lb / (a_lb n^2), p = p_lb / (a_lb n): the steady
    // Navier-Stokes fields rescaled to the unit-cell Stokes problem.
    const double vscale = nu_lb / (a_lb * n * n);
    const double pscale = 1.0 / (a_lb * n);
    sol.vx.resize(ncells);
    sol.vy.resize(ncells);
    sol.p.resize(ncells);
    for (std::size_t c = 0; c < ncells; ++c) {
      sol.vx[c] = m.ux[c] * vscale;
      sol.vy[c] = m.uy[c] * vscale;
      sol.p[c] = m.p[c] * pscale;
    }
    return sol;
  }
  throw std::runtime_error("unit cell solve: force rescaling did not settle");
}

namespace {

// int_{Y_F} grad v_k . grad v_j via link differences; at fluid-solid links
// the wall sits on the link midpoint with v = 0, giving a one-sided
// half-spacing contribution over half a cell.
double dirichlet_energy(const CellSolution& a, const CellSolution& b) {
  const int n = a.n;
  auto idx = [n](int i, int j) {
    return static_cast<std::size_t>((j + n) % n) * n + static_cast<std::size_t>((i + n) % n);
  };
  const auto& solid = a.solid;
  double sum = 0.0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t c = idx(i, j);
      const bool cf = solid[c] == 0;
      for (int dir = 0; dir < 2; ++dir) {
        const std::size_t nb = dir == 0 ? idx(i + 1, j) : idx(i, j + 1);
        const bool nf = solid[nb] == 0;
        if (cf && nf) {
          sum += (a.vx[nb] - a.vx[c]) * (b.vx[nb] - b.vx[c]);
          sum += (a.vy[nb] - a.vy[c]) * (b.vy[nb] - b.vy[c]);
        } else if (cf != nf) {
          const std::size_t f = cf ? c : nb;
          sum += 2.0 * (a.vx[f] * b.vx[f] + a.vy[f] * b.vy[f]);
        }
      }
    }
  return sum;
}

}  // namespace

double PermeabilityResult::assembly_disagreement() const {
  double worst = 0.0;
  for (int k = 0; k < 2; ++k) {
    const double m = A[k][k];
    const double g = A_gradient[k][k];
    if (m != 0.0) worst = std::max(worst, std::fabs(g / m - 1.0));
  }
  return worst;
}

PermeabilityResult permeability_tensor(const UnitCellSpec& spec) {
  PermeabilityResult r;
  r.columns[0] = solve_unit_cell(spec, 0);
  r.columns[1] = solve_unit_cell(spec, 1);
  r.residual = std::max(r.columns[0].residual, r.columns[1].residual);

  const int n = spec.resolution;
  const double cell_area = 1.0 / (static_cast<double>(n) * n);
  for (int k = 0; k < 2; ++k) {
    long double sx = 0.0L, sy = 0.0L;
    const auto& col = r.columns[k];
    for (std::size_t c = 0; c < col.vx.size(); ++c) {
      sx += col.vx[c];
      sy += col.vy[c];
    }
    r.A[0][k] = static_cast<double>(sx) * cell_area;
    r.A[1][k] = static_cast<double>(sy) * cell_area;
  }
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      r.A_gradient[j][k] = dirichlet_energy(r.columns[k], r.columns[j]);
  return r;
}

Mat2 local_model_matrix_2d() {
  return {{{4.0 * kPi, 0.0}, {0.0, 4.0 * kPi}}};
}

double permeability_eigenvalue(const PermeabilityResult& r) {
  const double a = r.A[0][0], b = r.A[1][1];
  const double spread = std::fabs(a - b) / std::max(std::fabs(a), std::fabs(b));
  if (spread > 0.05)
    throw std::runtime_error("permeability tensor is anisotropic (diagonal spread " +
                             std::to_string(spread) + "), isotropy assumption violated");
  return 0.5 * (a + b);
}

double brinkman_damping_from_cell(const PermeabilityResult& r, double sigma, double nu) {
  if (!(sigma > 0.0) || !(nu > 0.0))
    throw std::invalid_argument("brinkman damping: sigma and nu must be positive");
  if (std::isinf(sigma)) return 0.0;
  return nu / (sigma * sigma * permeability_eigenvalue(r));
}

}  // namespace hlbm::cellperm
