#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "detsum/lattice.hpp"
#include "detsum/simd/kernels.hpp"

namespace detsum {

/// Finite code: lattice points on a coordinate constellation, scaled so the
/// average squared Frobenius norm is exactly T * n_t.
struct Codebook {
  int n = 2;  // n_t = T = 2
  std::vector<ComplexMatrix> words;
  std::vector<std::array<int, 4>> coords;  // integer coefficients before scaling
  double scale = 1.0;
  std::string source;
  simd::CodebookSoA soa;

  double mean_energy() const;
};

/// 16-QAM-per-complex-coordinate codebook of L1/L2/Alamouti (256 words,
/// 4 bpcu over T = 2).
Codebook qam_codebook(const MatrixLattice& lattice);

enum class Decoder { Exhaustive };

struct SimConfig {
  int n_t = 2;
  int n_r = 1;
  int t = 2;
  std::vector<double> snr_db;
  std::uint64_t blocks = 10000;
  std::uint64_t seed = 0;
  Decoder decoder = Decoder::Exhaustive;
  int threads = 0;
  bool noiseless = false;  // test hook: forces N = 0
};

struct BlerRow {
  double snr_db = 0.0;
  std::uint64_t blocks = 0;
  std::uint64_t block_errors = 0;
  double bler = 0.0;
  double ci95_half_width = 0.0;  // Wilson interval half width
};

/// Wilson 95% interval (lo, hi) for e successes out of n.
std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t blocks);

/// Quasi-static Rayleigh MC with exhaustive ML decoding. Gaussians come from
/// Box-Muller on a counter-based generator keyed by (seed, snr index, block),
/// so results are bit-identical for a fixed seed regardless of thread count.
std::vector<BlerRow> simulate(const Codebook& codebook, const SimConfig& cfg);

namespace rng {
/// Counter-based stream: out(i) = mix(key + i * golden gamma).
struct Stream {
  std::uint64_t key = 0;
  std::uint64_t ctr = 0;
  std::uint64_t next_u64();
  double next_unit();             // [0, 1)
  void next_gauss_pair(double& g0, double& g1);  // Box-Muller
};
Stream block_stream(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t block);
}  // namespace rng

}  // namespace detsum
