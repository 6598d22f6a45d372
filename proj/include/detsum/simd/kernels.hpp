#pragma once

#include <cstddef>
#include <vector>

namespace detsum::simd {

enum class Backend { Scalar, Avx2 };

/// Runtime-selected backend: AVX2 when the CPU supports it, overridable via
/// DETSUM_SIMD=scalar|avx2.
Backend active_backend();
const char* backend_name(Backend backend);

/// Codebook in structure-of-arrays layout: entry (r, c) of codeword i lives
/// at x[r][c].re[i] / .im[i]. Fixed 2x2 codewords.
struct CodebookSoA {
  std::size_t size = 0;
  std::vector<double> re[2][2];
  std::vector<double> im[2][2];
};

/// argmin_i sum_rows || y_row - w_row . X_i ||^2 over the codebook, where
/// w = sqrt(rho/n_t) H (n_r x 2 complex, row-major re/im pairs) and y is
/// n_r x 2 complex. Scalar and AVX2 paths are bit-identical (same expression
/// tree, no FMA); ties resolve to the lowest index.
int ml_argmin(const CodebookSoA& cb, const double* w, const double* y, int n_r,
              double* best_metric, Backend backend);
int ml_argmin(const CodebookSoA& cb, const double* w, const double* y, int n_r,
              double* best_metric);

int ml_argmin_scalar(const CodebookSoA& cb, const double* w, const double* y, int n_r,
                     double* best_metric);
#if defined(__x86_64__) || defined(_M_X64)
int ml_argmin_avx2(const CodebookSoA& cb, const double* w, const double* y, int n_r,
                   double* best_metric);
#endif

}  // namespace detsum::simd
