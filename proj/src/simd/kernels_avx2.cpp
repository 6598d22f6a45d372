#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "detsum/simd/kernels.hpp"

namespace detsum::simd {

// 4 codewords per iteration; identical operation tree to the scalar kernel
// (mul/add/sub only, no FMA) so the metrics match bit for bit.
int ml_argmin_avx2(const CodebookSoA& cb, const double* w, const double* y, int n_r,
                   double* best_metric) {
  double best = 0.0;
  int best_i = -1;
  std::size_t i = 0;
  alignas(32) double lane[4];
  for (; i + 4 <= cb.size; i += 4) {
    __m256d m = _mm256_setzero_pd();
    for (int rr = 0; rr < n_r; ++rr) {
      const __m256d w0r = _mm256_set1_pd(w[4 * rr + 0]);
      const __m256d w0i = _mm256_set1_pd(w[4 * rr + 1]);
      const __m256d w1r = _mm256_set1_pd(w[4 * rr + 2]);
      const __m256d w1i = _mm256_set1_pd(w[4 * rr + 3]);
      for (int j = 0; j < 2; ++j) {
        const __m256d x0r = _mm256_loadu_pd(cb.re[0][j].data() + i);
        const __m256d x0i = _mm256_loadu_pd(cb.im[0][j].data() + i);
        const __m256d x1r = _mm256_loadu_pd(cb.re[1][j].data() + i);
        const __m256d x1i = _mm256_loadu_pd(cb.im[1][j].data() + i);
        const __m256d pr = _mm256_sub_pd(
            _mm256_add_pd(_mm256_sub_pd(_mm256_mul_pd(w0r, x0r), _mm256_mul_pd(w0i, x0i)),
                          _mm256_mul_pd(w1r, x1r)),
            _mm256_mul_pd(w1i, x1i));
        const __m256d pi = _mm256_add_pd(
            _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(w0r, x0i), _mm256_mul_pd(w0i, x0r)),
                          _mm256_mul_pd(w1r, x1i)),
            _mm256_mul_pd(w1i, x1r));
        const __m256d er = _mm256_sub_pd(_mm256_set1_pd(y[4 * rr + 2 * j]), pr);
        const __m256d ei = _mm256_sub_pd(_mm256_set1_pd(y[4 * rr + 2 * j + 1]), pi);
        m = _mm256_add_pd(_mm256_add_pd(m, _mm256_mul_pd(er, er)), _mm256_mul_pd(ei, ei));
      }
    }
    _mm256_store_pd(lane, m);
    for (int t = 0; t < 4; ++t) {
      if (best_i < 0 || lane[t] < best) {
        best = lane[t];
        best_i = static_cast<int>(i) + t;
      }
    }
  }
  // tail (codebooks are a multiple of 4 in practice)
  for (; i < cb.size; ++i) {
    double m = 0.0;
    for (int rr = 0; rr < n_r; ++rr) {
      const double w0r = w[4 * rr + 0], w0i = w[4 * rr + 1];
      const double w1r = w[4 * rr + 2], w1i = w[4 * rr + 3];
      for (int j = 0; j < 2; ++j) {
        const double x0r = cb.re[0][j][i], x0i = cb.im[0][j][i];
        const double x1r = cb.re[1][j][i], x1i = cb.im[1][j][i];
        const double pr = ((w0r * x0r - w0i * x0i) + w1r * x1r) - w1i * x1i;
        const double pi = ((w0r * x0i + w0i * x0r) + w1r * x1i) + w1i * x1r;
        const double er = y[4 * rr + 2 * j] - pr;
        const double ei = y[4 * rr + 2 * j + 1] - pi;
        m = (m + er * er) + ei * ei;
      }
    }
    if (best_i < 0 || m < best) {
      best = m;
      best_i = static_cast<int>(i);
    }
  }
  if (best_metric) *best_metric = best;
  return best_i;
}

}  // namespace detsum::simd

#endif
