// AVX2 collide kernel, four cells per lane. Compiled with -mavx2 only (no
// FMA) so every operation rounds exactly like the scalar reference.
#include <immintrin.h>

#include "hlbm/kernels.hpp"

namespace hlbm::kernels {
namespace {

struct Avx2Lane {
  using value = __m256d;
  static constexpr std::size_t width = 4;
  static value load(const double* p) { return _mm256_loadu_pd(p); }
  static void store(double* p, value v) { _mm256_storeu_pd(p, v); }
  static value set1(double v) { return _mm256_set1_pd(v); }
  static value max(value x, value y) { return _mm256_max_pd(x, y); }
  static double hmax(value v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    double m = lane[0];
    for (int i = 1; i < 4; ++i) m = lane[i] > m ? lane[i] : m;
    return m;
  }
  static double hsum(value v) {
    alignas(32) double lane[4];
    _mm256_store_pd(lane, v);
    return ((lane[0] + lane[1]) + lane[2]) + lane[3];
  }
};

#include "collide_body.inl"

}  // namespace

CollideStats collide_avx2(const CollideArgs& args) {
  const std::size_t n = args.end - args.begin;
  const std::size_t main_end = args.begin + (n / Avx2Lane::width) * Avx2Lane::width;

  CollideArgs head = args;
  head.end = main_end;
  CollideStats stats = collide_range_impl<Avx2Lane>(head);

  if (main_end < args.end) {
    CollideArgs tail = args;
    tail.begin = main_end;
    const CollideStats ts = collide_scalar(tail);
    stats.max_u2 = ts.max_u2 > stats.max_u2 ? ts.max_u2 : stats.max_u2;
    stats.rho_sum += ts.rho_sum;
  }
  return stats;
}

}  // namespace hlbm::kernels
