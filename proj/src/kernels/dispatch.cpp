#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hlbm/kernels.hpp"

namespace hlbm::kernels {

bool avx2_available() {
#if defined(HLBM_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Kind resolve(Kind requested) {
  if (requested == Kind::Auto) return avx2_available() ? Kind::Avx2 : Kind::Scalar;
  if (requested == Kind::Avx2 && !avx2_available())
    throw std::runtime_error("AVX2 kernel requested but not available on this build/CPU");
  return requested;
}

Kind kind_from_env(Kind fallback) {
  const char* e = std::getenv("HLBM_KERNEL");
  if (!e || !*e) return fallback;
  const std::string s(e);
  if (s == "scalar") return Kind::Scalar;
  if (s == "avx2") return Kind::Avx2;
  if (s == "auto") return Kind::Auto;
  throw std::runtime_error("HLBM_KERNEL must be one of: scalar, avx2, auto");
}

CollideFn select(Kind kind) {
  switch (resolve(kind)) {
#if defined(HLBM_HAVE_AVX2)
    case Kind::Avx2:
      return &collide_avx2;
#endif
    case Kind::Scalar:
    default:
      return &collide_scalar;
  }
}

const char* name(Kind kind) {
  switch (kind) {
    case Kind::Auto: return "auto";
    case Kind::Scalar: return "scalar";
    case Kind::Avx2: return "avx2";
  }
  return "?";
}

}  // namespace hlbm::kernels
