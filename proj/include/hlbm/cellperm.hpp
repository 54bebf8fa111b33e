// Periodic unit-cell solver for the permeability tensor A: the lattice
// module driven by unit body forces around a centered disk, run to steady
// state, assembled in both the mean-velocity and the Dirichlet-energy form.
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hlbm::cellperm {

using Mat2 = std::array<std::array<double, 2>, 2>;

struct UnitCellSpec {
  int resolution = 128;      // cells per unit length
  double delta = 0.5;        // obstacle diameter, fraction of the cell
  double tau = 1.0;          // lattice relaxation time of the Stokes solve
  double residual_tol = 1e-10;  // relative per-step velocity change at steady state
  long max_steps = 4000000;
  long check_stride = 64;
  double target_u = 5e-3;    // aimed-for max lattice velocity (keeps Re tiny)

  void validate() const;  // rejects the degenerate cases delta <= 0 and delta >= 1
};

// Unit-cell solution fields for one forcing axis, in cell coordinates
// (|Y| = 1): v solves grad p - lap v = e_k, periodic, no-slip on the disk.
struct CellSolution {
  int n = 0;
  int axis = 0;
  std::vector<double> vx, vy, p;
  std::vector<std::uint8_t> solid;
  double residual = 0.0;
  long steps = 0;
  double max_u_lattice = 0.0;
};

struct PermeabilityResult {
  Mat2 A{};           // mean-velocity assembly, A_jk = int_{Y_F} (v_k)_j (primary)
  Mat2 A_gradient{};  // int grad v_k . grad v_j (cross-check)
  std::array<CellSolution, 2> columns;
  double residual = 0.0;

  // Relative diagonal disagreement between the two assemblies.
  double assembly_disagreement() const;
};

CellSolution solve_unit_cell(const UnitCellSpec& spec, int axis);
PermeabilityResult permeability_tensor(const UnitCellSpec& spec);

// Drag matrix of the d = 2 local model problem, exactly 4*pi*I.
Mat2 local_model_matrix_2d();

// Single eigenvalue of A under the isotropy assumption; rejects eigenvalue
// spread beyond 5%.
double permeability_eigenvalue(const PermeabilityResult& r);

// nu / (sigma^2 A); the damping coefficient of the unified Brinkman law.
double brinkman_damping_from_cell(const PermeabilityResult& r, double sigma, double nu);

}  // namespace hlbm::cellperm
