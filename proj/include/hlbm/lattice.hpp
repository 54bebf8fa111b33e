// D2Q9 realization of the damped BGK equation: porosity-controlled
// equilibrium, collide-stream update with Guo forcing, halfway bounce-back
// walls and obstacles, macroscopic field extraction.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hlbm/kernels.hpp"

namespace hlbm::lattice {

inline constexpr int kQ = 9;
inline constexpr std::array<int, kQ> kCx = {0, 1, 0, -1, 0, 1, -1, -1, 1};
inline constexpr std::array<int, kQ> kCy = {0, 0, 1, 0, -1, 1, 1, -1, -1};
inline constexpr std::array<int, kQ> kOpposite = {0, 3, 4, 1, 2, 7, 8, 5, 6};
inline constexpr std::array<double, kQ> kWeight = {
    4.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0,  1.0 / 9.0,
    1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0, 1.0 / 36.0};
inline constexpr double kCs2 = 1.0 / 3.0;

// Gauss-Hermite lattice isotropy up to 4th order, verified exactly with the
// integer weights 36*w_i:
//   sum w = 1, sum w c = 0, sum w cc = (1/3) I,
//   sum w c_a c_b c_g = 0, sum w cccc = (1/9)(dd + dd + dd).
constexpr bool lattice_isotropy_holds() {
  constexpr int w36[kQ] = {16, 4, 4, 4, 4, 1, 1, 1, 1};
  int sum = 0;
  int m1[2] = {0, 0};
  int m2[2][2] = {};
  int m3[2][2][2] = {};
  int m4[2][2][2][2] = {};
  for (int q = 0; q < kQ; ++q) {
    const int c[2] = {kCx[q], kCy[q]};
    sum += w36[q];
    for (int a = 0; a < 2; ++a) {
      m1[a] += w36[q] * c[a];
      for (int b = 0; b < 2; ++b) {
        m2[a][b] += w36[q] * c[a] * c[b];
        for (int g = 0; g < 2; ++g) {
          m3[a][b][g] += w36[q] * c[a] * c[b] * c[g];
          for (int e = 0; e < 2; ++e) m4[a][b][g][e] += w36[q] * c[a] * c[b] * c[g] * c[e];
        }
      }
    }
  }
  if (sum != 36) return false;
  for (int a = 0; a < 2; ++a) {
    if (m1[a] != 0) return false;
    for (int b = 0; b < 2; ++b) {
      if (m2[a][b] != (a == b ? 12 : 0)) return false;
      for (int g = 0; g < 2; ++g) {
        if (m3[a][b][g] != 0) return false;
        for (int e = 0; e < 2; ++e) {
          const int dd = (a == b && g == e ? 1 : 0) + (a == g && b == e ? 1 : 0) + (a == e && b == g ? 1 : 0);
          if (m4[a][b][g][e] != 4 * dd) return false;
        }
      }
    }
  }
  return true;
}
static_assert(lattice_isotropy_holds(), "D2Q9 weight table violates lattice isotropy");

// The porosity-controlled discrete equilibrium,
//   f_i^eq = w_i rho [1 + 3 c_i.(varpi u) + 9/2 (c_i.(varpi u))^2 - 3/2 (varpi u)^2].
std::array<double, kQ> equilibrium(double rho, double ux, double uy, double varpi);

struct MacroFields {
  int nx = 0, ny = 0;
  long step = 0;
  double rho_ref = 1.0;
  std::vector<double> rho, ux, uy, p;  // p = (rho - rho_ref)/3

  std::size_t size() const { return rho.size(); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
};

struct SimulationConfig {
  int nx = 0;
  int ny = 0;
  double tau = 1.0;                       // lattice relaxation time, > 1/2
  double K = std::numeric_limits<double>::infinity();  // lattice permeability; +inf disables damping
  std::vector<double> K_field;            // optional per-cell permeability
  double ax = 0.0, ay = 0.0;              // uniform body acceleration (force per mass)
  std::vector<double> ax_field, ay_field; // optional per-cell acceleration
  bool wall_x = false;                    // bounce-back planes at x = 0 and x = nx
  bool wall_y = false;                    // bounce-back planes at y = 0 and y = ny
  std::vector<std::uint8_t> solid;        // optional obstacle mask, nx*ny
  double rho0 = 1.0, ux0 = 0.0, uy0 = 0.0;
  long steps = 0;
  long cadence = 0;                       // snapshot stride; 0 = final state only
  kernels::Kind kernel = kernels::Kind::Auto;
  int threads = 1;

  double nu_lb() const { return (tau - 0.5) / 3.0; }
  void validate() const;
};

class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(long step, int i, int j, double umag, const std::string& what)
      : std::runtime_error(what), step(step), cell_x(i), cell_y(j), u_mag(umag) {}
  long step;
  int cell_x, cell_y;
  double u_mag;
};

class Simulation {
 public:
  explicit Simulation(SimulationConfig cfg);

  // Initialize populations so the measured fields at step 0 equal the given
  // (rho, ux, uy) per cell, including the half-force shift.
  void set_initial_state(const std::function<void(int i, int j, double& rho, double& ux, double& uy)>& fn);

  // Add the first-order non-equilibrium part from a lattice-unit velocity
  // gradient (dux/dx, dux/dy, duy/dx, duy/dy per cell). Sharpens startup for
  // smooth initial data.
  void add_shear_nonequilibrium(
      const std::function<void(int i, int j, double& dxux, double& dyux, double& dxuy, double& dyuy)>& grad);

  void step(long n = 1);
  MacroFields macroscopic() const;
  double mass() const;  // over fluid cells

  long current_step() const { return step_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  const SimulationConfig& config() const { return cfg_; }
  kernels::Kind kernel_kind() const { return kernel_kind_; }
  bool is_solid(int i, int j) const { return solid_[index(i, j)] != 0; }
  double varpi_at(int i, int j) const { return varpi_[index(i, j)]; }
  const std::vector<double>& population(int q) const { return f_[q]; }

  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }

 private:
  void collide();
  void stream();
  void locate_and_throw(double max_u2) const;

  SimulationConfig cfg_;
  int nx_, ny_;
  std::size_t ncells_;
  double inv_tau_, guo_pref_;
  std::vector<double> varpi_;
  std::vector<std::uint8_t> solid_;
  std::array<std::vector<double>, kQ> f_, fpost_;
  long step_ = 0;
  double rho_ref_ = 1.0;
  kernels::Kind kernel_kind_;
  kernels::CollideFn collide_fn_;
  int threads_;
};

// Execute cfg.steps updates, collecting snapshots every cfg.cadence steps
// (always including step 0 when cadence > 0, and the final state).
std::vector<MacroFields> run(const SimulationConfig& cfg);
std::vector<MacroFields> run(
    const SimulationConfig& cfg,
    const std::function<void(int, int, double&, double&, double&)>& initial_state);

}  // namespace hlbm::lattice
