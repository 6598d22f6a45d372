#include "detsum/simd/kernels.hpp"

namespace detsum::simd {

// Reference kernel. The AVX2 variant mirrors this expression tree exactly
// (same grouping, no FMA), so both produce bit-identical metrics.
int ml_argmin_scalar(const CodebookSoA& cb, const double* w, const double* y, int n_r,
                     double* best_metric) {
  double best = 0.0;
  int best_i = -1;
  for (std::size_t i = 0; i < cb.size; ++i) {
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
