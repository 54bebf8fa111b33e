#include "hlbm/kernels.hpp"

namespace hlbm::kernels {
namespace {

struct ScalarLane {
  using value = double;
  static constexpr std::size_t width = 1;
  static double load(const double* p) { return *p; }
  static void store(double* p, double v) { *p = v; }
  static double set1(double v) { return v; }
  static double max(double x, double y) { return x > y ? x : y; }
  static double hmax(double v) { return v; }
  static double hsum(double v) { return v; }
};

#include "collide_body.inl"

}  // namespace

CollideStats collide_scalar(const CollideArgs& args) { return collide_range_impl<ScalarLane>(args); }

}  // namespace hlbm::kernels
