#include <cstdlib>
#include <cstring>

#include "detsum/simd/kernels.hpp"

namespace detsum::simd {

namespace {

Backend detect() {
  if (const char* env = std::getenv("DETSUM_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::Scalar;
#if defined(__x86_64__) || defined(_M_X64)
    if (std::strcmp(env, "avx2") == 0) return Backend::Avx2;
#endif
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2")) return Backend::Avx2;
#endif
  return Backend::Scalar;
}

}  // namespace

Backend active_backend() {
  static const Backend b = detect();
  return b;
}

const char* backend_name(Backend backend) {
  switch (backend) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
  }
  return "?";
}

int ml_argmin(const CodebookSoA& cb, const double* w, const double* y, int n_r,
              double* best_metric, Backend backend) {
#if defined(__x86_64__) || defined(_M_X64)
  if (backend == Backend::Avx2) return ml_argmin_avx2(cb, w, y, n_r, best_metric);
#else
  (void)backend;
#endif
  return ml_argmin_scalar(cb, w, y, n_r, best_metric);
}

int ml_argmin(const CodebookSoA& cb, const double* w, const double* y, int n_r,
              double* best_metric) {
  return ml_argmin(cb, w, y, n_r, best_metric, active_backend());
}

}  // namespace detsum::simd
