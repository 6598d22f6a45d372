#include "detsum/channel.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "detsum/errors.hpp"

namespace detsum {

namespace rng {

namespace {
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t Stream::next_u64() { return mix64(key + 0x9e3779b97f4a7c15ull * ctr++); }

double Stream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

void Stream::next_gauss_pair(double& g0, double& g1) {
  double u1 = next_unit();
  double u2 = next_unit();
  // keep log() away from 0
  double r = std::sqrt(-2.0 * std::log(1.0 - u1));
  double a = 2.0 * M_PI * u2;
  g0 = r * std::cos(a);
  g1 = r * std::sin(a);
}

Stream block_stream(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t block) {
  Stream s;
  s.key = mix64(mix64(seed ^ 0x6c62272e07bb0142ull) + mix64(snr_index) + block * 0x100000001b3ull);
  return s;
}

}  // namespace rng

double Codebook::mean_energy() const {
  double s = 0.0;
  for (const auto& w : words) s += mat_inner(w, w);
  return s / static_cast<double>(words.size());
}

Codebook qam_codebook(const MatrixLattice& lattice) {
  if (lattice.k != 4 || lattice.n != 2 ||
      (lattice.tag != "l1" && lattice.tag != "l2" && lattice.tag != "alamouti"))
    throw UnsupportedLattice("16-QAM codebooks cover l1, l2 and alamouti");

  Codebook cb;
  cb.source = lattice.tag + " / 16-QAM coordinates";
  static const int levels[4] = {-3, -1, 1, 3};
  double energy = 0.0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          std::array<std::int64_t, 4> z{levels[a], levels[b], levels[c], levels[d]};
          ComplexMatrix x = lattice.matrix_of(z);
          energy += mat_inner(x, x);
          cb.coords.push_back({levels[a], levels[b], levels[c], levels[d]});
          cb.words.push_back(std::move(x));
        }
  energy /= static_cast<double>(cb.words.size());
  // average power constraint: mean ||X||_F^2 == T n_t == 4
  cb.scale = std::sqrt(4.0 / energy);
  for (auto& w : cb.words) w *= cb.scale;

  cb.soa.size = cb.words.size();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      cb.soa.re[r][c].resize(cb.soa.size);
      cb.soa.im[r][c].resize(cb.soa.size);
      for (std::size_t i = 0; i < cb.soa.size; ++i) {
        cb.soa.re[r][c][i] = cb.words[i](r, c).real();
        cb.soa.im[r][c][i] = cb.words[i](r, c).imag();
      }
    }
  return cb;
}

std::pair<double, double> wilson_interval(std::uint64_t errors, std::uint64_t blocks) {
  const double z = 1.959963984540054;
  const double n = static_cast<double>(blocks);
  const double p = static_cast<double>(errors) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double hw = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {center - hw, center + hw};
}

std::vector<BlerRow> simulate(const Codebook& codebook, const SimConfig& cfg) {
  if (cfg.n_t != 2 || cfg.t != 2) throw Error("simulator covers n_t = T = 2");
  if (cfg.n_r < 1 || cfg.n_r > 8) throw Error("n_r out of range");
  if (cfg.blocks == 0) throw Error("need at least one block");
  const std::size_t ncw = codebook.soa.size;
  if (ncw < 2) throw Error("degenerate codebook");

  std::vector<BlerRow> rows;
  const simd::Backend backend = simd::active_backend();

  for (std::size_t si = 0; si < cfg.snr_db.size(); ++si) {
    const double rho = std::pow(10.0, cfg.snr_db[si] / 10.0);
    const double amp = std::sqrt(rho / static_cast<double>(cfg.n_t));

    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<std::uint64_t> errors{0};
    const std::uint64_t chunk = 4096;
    const std::uint64_t nchunks = (cfg.blocks + chunk - 1) / chunk;

    auto worker = [&] {
      std::vector<double> w(4 * cfg.n_r), y(4 * cfg.n_r), h(8 * cfg.n_r);
      std::uint64_t local_errors = 0;
      for (;;) {
        std::uint64_t c = next_chunk.fetch_add(1);
        if (c >= nchunks) break;
        std::uint64_t b0 = c * chunk;
        std::uint64_t b1 = std::min(cfg.blocks, b0 + chunk);
        for (std::uint64_t b = b0; b < b1; ++b) {
          rng::Stream rs = rng::block_stream(cfg.seed, si, b);
          const std::size_t sent = static_cast<std::size_t>(rs.next_u64() % ncw);
          // H: n_r x 2 complex, unit-variance circular gaussian entries
          for (int i = 0; i < 2 * cfg.n_r; ++i) {
            double gr, gi;
            rs.next_gauss_pair(gr, gi);
            h[2 * i] = gr * M_SQRT1_2;
            h[2 * i + 1] = gi * M_SQRT1_2;
          }
          // Y = amp H X + N
          const auto& xs = codebook.words[sent];
          for (int rr = 0; rr < cfg.n_r; ++rr) {
            const std::complex<double> h0(h[4 * rr], h[4 * rr + 1]);
            const std::complex<double> h1(h[4 * rr + 2], h[4 * rr + 3]);
            w[4 * rr + 0] = amp * h0.real();
            w[4 * rr + 1] = amp * h0.imag();
            w[4 * rr + 2] = amp * h1.real();
            w[4 * rr + 3] = amp * h1.imag();
            for (int j = 0; j < 2; ++j) {
              std::complex<double> v = amp * (h0 * xs(0, j) + h1 * xs(1, j));
              double nr = 0.0, ni = 0.0;
              if (!cfg.noiseless) {
                rs.next_gauss_pair(nr, ni);
                nr *= M_SQRT1_2;
                ni *= M_SQRT1_2;
              }
              y[4 * rr + 2 * j] = v.real() + nr;
              y[4 * rr + 2 * j + 1] = v.imag() + ni;
            }
          }
          int decoded = simd::ml_argmin(codebook.soa, w.data(), y.data(), cfg.n_r, nullptr,
                                        backend);
          if (static_cast<std::size_t>(decoded) != sent) ++local_errors;
        }
      }
      errors.fetch_add(local_errors);
    };

    unsigned hw = std::thread::hardware_concurrency();
    std::size_t want = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads) : (hw ? hw : 1);
    std::size_t nthreads = std::min<std::size_t>(want, nchunks);
    if (nthreads <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    BlerRow row;
    row.snr_db = cfg.snr_db[si];
    row.blocks = cfg.blocks;
    row.block_errors = errors.load();
    row.bler = static_cast<double>(row.block_errors) / static_cast<double>(row.blocks);
    auto [lo, hi] = wilson_interval(row.block_errors, row.blocks);
    row.ci95_half_width = 0.5 * (hi - lo);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace detsum
