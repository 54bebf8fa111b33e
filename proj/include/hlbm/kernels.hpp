// Fused collide+force kernels for the D2Q9 update. A scalar reference kernel
// and an AVX2 variant share one templated body; the active one is selected at
// runtime and both produce bitwise-identical populations.
#pragma once

#include <cstddef>

namespace hlbm::kernels {

enum class Kind { Auto, Scalar, Avx2 };

struct CollideArgs {
  const double* const* f;   // 9 population planes, cell-major
  double* const* fpost;     // 9 post-collision planes
  const double* varpi;      // per-cell porosity control
  const double* ax_field;   // optional per-cell acceleration (nullptr = uniform)
  const double* ay_field;
  double ax = 0.0;          // uniform acceleration
  double ay = 0.0;
  double inv_tau = 1.0;
  double guo_pref = 0.5;    // 1 - 1/(2 tau)
  std::size_t begin = 0;
  std::size_t end = 0;
};

struct CollideStats {
  double max_u2 = 0.0;   // max |u|^2 over the range; grouping-independent
  double rho_sum = 0.0;  // finiteness probe only; rounding depends on grouping
};

using CollideFn = CollideStats (*)(const CollideArgs&);

CollideStats collide_scalar(const CollideArgs& args);
CollideStats collide_avx2(const CollideArgs& args);  // defined when built with AVX2

bool avx2_available();            // compiled in and supported by this CPU
Kind resolve(Kind requested);     // Auto -> Avx2 when available, else Scalar
Kind kind_from_env(Kind fallback);  // reads HLBM_KERNEL=scalar|avx2|auto
CollideFn select(Kind kind);
const char* name(Kind kind);

}  // namespace hlbm::kernels
