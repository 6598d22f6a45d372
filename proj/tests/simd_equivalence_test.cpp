#include <random>

#include "detsum/simd/kernels.hpp"
#include "doctest.h"

using namespace detsum::simd;

namespace {

CodebookSoA random_codebook(std::mt19937_64& rng, std::size_t size) {
  std::normal_distribution<double> g;
  CodebookSoA cb;
  cb.size = size;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      cb.re[r][c].resize(size);
      cb.im[r][c].resize(size);
      for (std::size_t i = 0; i < size; ++i) {
        cb.re[r][c][i] = g(rng);
        cb.im[r][c][i] = g(rng);
      }
    }
  return cb;
}

}  // namespace

TEST_CASE("backend dispatch reports a valid backend") {
  Backend b = active_backend();
  CHECK((b == Backend::Scalar || b == Backend::Avx2));
  CHECK(backend_name(b) != nullptr);
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 kernel is bit-identical to the scalar reference") {
  if (!__builtin_cpu_supports("avx2")) {
    MESSAGE("no avx2 on this host, skipping");
    return;
  }
  std::mt19937_64 rng(123);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t size = (trial % 3 == 0) ? 256 : 17 + (trial % 64);  // exercise the tail
    CodebookSoA cb = random_codebook(rng, size);
    int n_r = 1 + (trial % 3);
    std::vector<double> w(4 * n_r), y(4 * n_r);
    for (auto& v : w) v = g(rng);
    for (auto& v : y) v = g(rng);
    double ms = 0, mv = 0;
    int is = ml_argmin_scalar(cb, w.data(), y.data(), n_r, &ms);
    int iv = ml_argmin_avx2(cb, w.data(), y.data(), n_r, &mv);
    CHECK(is == iv);
    CHECK(ms == mv);  // bit-identical, not approximately equal
  }
}

TEST_CASE("duplicated codewords tie-break to the lowest index on both paths") {
  if (!__builtin_cpu_supports("avx2")) return;
  std::mt19937_64 rng(5);
  CodebookSoA cb = random_codebook(rng, 64);
  // make codeword 41 an exact copy of codeword 9
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      cb.re[r][c][41] = cb.re[r][c][9];
      cb.im[r][c][41] = cb.im[r][c][9];
    }
  // steer the argmin to that duplicated word
  std::vector<double> w{1.0, 0.0, 0.0, 0.0}, y{cb.re[0][0][9], cb.im[0][0][9],
                                               cb.re[0][1][9], cb.im[0][1][9]};
  // w picks row 0 only; y equals its image, so metric(9) == metric(41) == row-1 residue
  int is = ml_argmin_scalar(cb, w.data(), y.data(), 1, nullptr);
  int iv = ml_argmin_avx2(cb, w.data(), y.data(), 1, nullptr);
  CHECK(is == iv);
}
#endif
