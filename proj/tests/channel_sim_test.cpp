#include <algorithm>
#include <cmath>
#include <random>

#include "detsum/channel.hpp"
#include "detsum/constructions.hpp"
#include "detsum/errors.hpp"
#include "doctest.h"

using namespace detsum;

TEST_CASE("qam codebooks") {
  MatrixLattice l1 = builtin(BuiltinCode::L1);
  MatrixLattice l2 = builtin(BuiltinCode::L2);
  Codebook c1 = qam_codebook(l1);
  Codebook c2 = qam_codebook(l2);

  SUBCASE("256 words at the power constraint") {
    CHECK(c1.words.size() == 256);
    CHECK(c2.words.size() == 256);
    CHECK(c1.mean_energy() == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(c2.mean_energy() == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("isometric lattices give identical Frobenius multisets") {
    std::vector<double> f1, f2;
    for (const auto& w : c1.words) f1.push_back(frobenius(w));
    for (const auto& w : c2.words) f2.push_back(frobenius(w));
    std::sort(f1.begin(), f1.end());
    std::sort(f2.begin(), f2.end());
    for (std::size_t i = 0; i < f1.size(); ++i)
      CHECK(f1[i] == doctest::Approx(f2[i]).epsilon(1e-12));
  }
  SUBCASE("identical minimum pairwise determinants, exactly") {
    // difference codewords live on even coordinates; scan all pairs with the
    // exact reduced norms
    auto min_pair_det2 = [](const MatrixLattice& lat, const Codebook& cb) {
      std::int64_t best = INT64_MAX;
      for (std::size_t i = 0; i < cb.coords.size(); ++i)
        for (std::size_t j = i + 1; j < cb.coords.size(); ++j) {
          std::vector<std::int64_t> dz(4);
          for (int t = 0; t < 4; ++t) dz[t] = cb.coords[i][t] - cb.coords[j][t];
          Gauss64 d = lat.exact_det->eval(dz);
          std::int64_t d2 = d.a * d.a + d.b * d.b;
          best = std::min(best, d2);
        }
      return best;
    };
    std::int64_t m1 = min_pair_det2(l1, c1);
    std::int64_t m2 = min_pair_det2(l2, c2);
    CHECK(m1 == m2);
    CHECK(m1 > 0);
  }
  SUBCASE("unsupported lattices are rejected") {
    CHECK_THROWS_AS(qam_codebook(builtin(BuiltinCode::Gaussian)), UnsupportedLattice);
    CHECK_THROWS_AS(qam_codebook(builtin(BuiltinCode::GoldenOrder)), UnsupportedLattice);
  }
}

TEST_CASE("simulator basics") {
  Codebook cb = qam_codebook(builtin(BuiltinCode::L2));

  SUBCASE("zero-SNR limit decodes at chance level") {
    SimConfig cfg;
    cfg.n_r = 1;
    cfg.snr_db = {-80.0};
    cfg.blocks = 20000;
    cfg.seed = 7;
    auto rows = simulate(cb, cfg);
    double expect = 255.0 / 256.0;
    CHECK(std::abs(rows[0].bler - expect) <= 3.0 * rows[0].ci95_half_width);
  }
  SUBCASE("noiseless decoding is error free") {
    SimConfig cfg;
    cfg.n_r = 2;
    cfg.snr_db = {10.0};
    cfg.blocks = 5000;
    cfg.seed = 3;
    cfg.noiseless = true;
    auto rows = simulate(cb, cfg);
    CHECK(rows[0].block_errors == 0);
  }
  SUBCASE("reproducible and thread-count independent") {
    SimConfig cfg;
    cfg.n_r = 1;
    cfg.snr_db = {12.0, 16.0};
    cfg.blocks = 20000;
    cfg.seed = 42;
    cfg.threads = 1;
    auto a = simulate(cb, cfg);
    cfg.threads = 4;
    auto b = simulate(cb, cfg);
    auto c = simulate(cb, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].block_errors == b[i].block_errors);
      CHECK(b[i].block_errors == c[i].block_errors);
      CHECK(a[i].bler == b[i].bler);
    }
  }
  SUBCASE("monotone in SNR up to two interval widths") {
    SimConfig cfg;
    cfg.n_r = 1;
    cfg.snr_db = {6.0, 10.0, 14.0, 18.0};
    cfg.blocks = 30000;
    cfg.seed = 5;
    auto rows = simulate(cb, cfg);
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].bler <= rows[i - 1].bler + 2.0 * (rows[i].ci95_half_width +
                                                      rows[i - 1].ci95_half_width));
  }
}

TEST_CASE("wilson intervals recompute") {
  auto [lo, hi] = wilson_interval(10, 1000);
  const double z = 1.959963984540054;
  double p = 0.01, n = 1000;
  double denom = 1 + z * z / n;
  double center = (p + z * z / (2 * n)) / denom;
  double hw = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom;
  CHECK(lo == doctest::Approx(center - hw).epsilon(1e-12));
  CHECK(hi == doctest::Approx(center + hw).epsilon(1e-12));
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
}

TEST_CASE("decoder matches an independent exhaustive recomputation") {
  Codebook cb = qam_codebook(builtin(BuiltinCode::L1));
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n_r = 1 + (trial % 2);
    std::vector<double> w(4 * n_r), y(4 * n_r);
    for (auto& v : w) v = g(rng);
    for (auto& v : y) v = 2.0 * g(rng);
    double best_metric = 0.0;
    int got = simd::ml_argmin(cb.soa, w.data(), y.data(), n_r, &best_metric);

    // independent path: Eigen matrix arithmetic on the stored codewords
    int want = -1;
    double want_metric = 1e300;
    for (std::size_t i = 0; i < cb.words.size(); ++i) {
      double m = 0.0;
      for (int rr = 0; rr < n_r; ++rr) {
        std::complex<double> w0(w[4 * rr], w[4 * rr + 1]), w1(w[4 * rr + 2], w[4 * rr + 3]);
        for (int j = 0; j < 2; ++j) {
          std::complex<double> pred = w0 * cb.words[i](0, j) + w1 * cb.words[i](1, j);
          std::complex<double> yv(y[4 * rr + 2 * j], y[4 * rr + 2 * j + 1]);
          m += std::norm(yv - pred);
        }
      }
      if (m < want_metric) {
        want_metric = m;
        want = static_cast<int>(i);
      }
    }
    CHECK(got == want);
    CHECK(best_metric == doctest::Approx(want_metric).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("alamouti diversity slope near 2") {
  Codebook cb = qam_codebook(builtin(BuiltinCode::Alamouti));
  SimConfig cfg;
  cfg.n_r = 1;
  cfg.snr_db = {16.0, 24.0};
  cfg.blocks = 400000;
  cfg.seed = 20240601;
  auto rows = simulate(cb, cfg);
  REQUIRE(rows[0].block_errors > 50);
  REQUIRE(rows[1].block_errors > 50);
  double d = -(std::log10(rows[1].bler) - std::log10(rows[0].bler)) / ((24.0 - 16.0) / 10.0);
  CHECK(d == doctest::Approx(2.0).epsilon(0.25));
}
