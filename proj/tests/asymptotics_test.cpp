#include <cmath>

#include "detsum/asymptotics.hpp"
#include "detsum/constructions.hpp"
#include "detsum/errors.hpp"
#include "doctest.h"

using namespace detsum;

namespace {

std::vector<std::pair<double, double>> power_table(double p, int n = 10) {
  std::vector<std::pair<double, double>> t;
  for (int i = 0; i < n; ++i) {
    double m = 4.0 * std::pow(2.0, i * 0.5);
    t.emplace_back(m, std::pow(m, p));
  }
  return t;
}

}  // namespace

TEST_CASE("growth fits") {
  SUBCASE("exact quartic") {
    GrowthFit fit = fit_growth(power_table(4.0));
    CHECK(fit.slope == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(fit.stderr_slope < 1e-10);
    CHECK(fit.r2 == doctest::Approx(1.0));
  }
  SUBCASE("constant table") {
    std::vector<std::pair<double, double>> t;
    for (int i = 0; i < 8; ++i) t.emplace_back(4.0 * std::pow(2.0, i), 7.5);
    GrowthFit fit = fit_growth(t);
    CHECK(fit.slope == doctest::Approx(0.0));
  }
  SUBCASE("recomputing from points_used reproduces the slope") {
    GrowthFit fit = fit_growth(power_table(2.5));
    double sx = 0, sy = 0;
    for (auto [x, y] : fit.points_used) {
      sx += x;
      sy += y;
    }
    double mx = sx / fit.points_used.size(), my = sy / fit.points_used.size();
    double num = 0, den = 0;
    for (auto [x, y] : fit.points_used) {
      num += (x - mx) * (y - my);
      den += (x - mx) * (x - mx);
    }
    CHECK(num / den == doctest::Approx(fit.slope).epsilon(1e-12));
  }
  SUBCASE("zeros are excluded and counted") {
    auto t = power_table(2.0);
    t[0].second = 0.0;
    GrowthFit fit = fit_growth(t);
    CHECK(fit.zeros_excluded == 1);
    CHECK(fit.points_used.size() == t.size() - 1);
  }
  SUBCASE("insufficient data throws") {
    std::vector<std::pair<double, double>> t{{1, 1}, {2, 4}, {3, 9}};
    CHECK_THROWS_AS(fit_growth(t), InsufficientRange);
    std::vector<std::pair<double, double>> narrow{{10, 1}, {11, 1}, {12, 1}, {13, 1}, {14, 1}};
    CHECK_THROWS_AS(fit_growth(narrow), InsufficientRange);
  }
  SUBCASE("default policy drops the smallest quarter") {
    auto t = power_table(3.0, 12);
    t[0].second = 1e9;  // transient junk at the smallest radii
    t[1].second = 1e9;
    GrowthFit fit = fit_growth_default(t);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-9));
  }
}

TEST_CASE("sum lower-bound exponent") {
  CHECK(dmt_sum_lower_exponent(2, 8, 1) == doctest::Approx(4.0));
  CHECK(dmt_sum_lower_exponent(2, 4, 1) == doctest::Approx(0.0));
  CHECK(dmt_sum_lower_exponent(2, 8, 2) == doctest::Approx(4.0));
}

TEST_CASE("predicted exponents") {
  MatrixLattice l1 = builtin(BuiltinCode::L1);
  MatrixLattice l2 = builtin(BuiltinCode::L2);
  MatrixLattice golden = builtin(BuiltinCode::GoldenOrder);
  MatrixLattice gauss = builtin(BuiltinCode::Gaussian);

  ExponentPrediction p1 = predicted_exponent(l1.info, 1);
  CHECK(p1.exponent == doctest::Approx(2.0));
  CHECK(p1.regime == GrowthRegime::RationalCenterUnramified);
  CHECK(!p1.polylog);

  ExponentPrediction p2 = predicted_exponent(l2.info, 1);
  CHECK(p2.exponent == doctest::Approx(0.0));
  CHECK(p2.regime == GrowthRegime::RationalCenterRamified);

  ExponentPrediction pg = predicted_exponent(golden.info, 2);
  CHECK(pg.exponent == doctest::Approx(4.0));
  CHECK(pg.regime == GrowthRegime::ComplexQuadraticCenter);
  CHECK_THROWS_AS(predicted_exponent(golden.info, 1), OutOfRegime);

  ExponentPrediction pn = predicted_exponent(gauss.info, 1);
  CHECK(pn.polylog);
  CHECK(pn.exponent == doctest::Approx(0.0));
}

TEST_CASE("optimal tradeoff curves") {
  DmtCurve c33 = optimal_dmt(3, 3);
  REQUIRE(c33.vertices.size() == 4);
  CHECK(c33.vertices[0] == std::pair<double, double>(0.0, 9.0));
  CHECK(c33.vertices[1] == std::pair<double, double>(1.0, 4.0));
  CHECK(c33.vertices[2] == std::pair<double, double>(2.0, 1.0));
  CHECK(c33.vertices[3] == std::pair<double, double>(3.0, 0.0));

  DmtCurve c11 = optimal_dmt(1, 1);
  REQUIRE(c11.vertices.size() == 2);
  CHECK(c11.vertices[0].second == 1.0);
  CHECK(c11.vertices[1].second == 0.0);

  DmtCurve c21 = optimal_dmt(2, 1);
  REQUIRE(c21.vertices.size() == 2);
  CHECK(c21.vertices[0].second == 2.0);
  CHECK(c21.vertices[1].second == 0.0);

  // d(r) = (n_t - r)(n_r - r) exactly at integer vertices
  for (int nt = 1; nt <= 5; ++nt)
    for (int nr = 1; nr <= 5; ++nr) {
      DmtCurve c = optimal_dmt(nt, nr);
      for (auto [r, d] : c.vertices)
        CHECK(d == (nt - r) * (nr - r));
    }
}

TEST_CASE("code tradeoff segments") {
  MatrixLattice l2 = builtin(BuiltinCode::L2);      // ramified, n = 2
  MatrixLattice l1 = builtin(BuiltinCode::L1);      // unramified, n = 2
  MatrixLattice golden = builtin(BuiltinCode::GoldenOrder);

  SUBCASE("ramified n=2, nr=1 meets the optimal segment") {
    DmtSegment s = code_dmt_segment(l2.info, 1);
    CHECK(s.d0 == 2.0);
    CHECK(s.d1_unclipped == 0.0);
    CHECK(s.meets_optimal);
  }
  SUBCASE("complex center n=2, nr=2 meets the optimal segment") {
    DmtSegment s = code_dmt_segment(golden.info, 2);
    CHECK(s.d0 == 4.0);
    CHECK(s.d1_unclipped == 1.0);
    CHECK(s.meets_optimal);
  }
  SUBCASE("unramified n=2, nr=1 is clipped and suboptimal") {
    DmtSegment s = code_dmt_segment(l1.info, 1);
    CHECK(s.d0 == 2.0);
    CHECK(s.d1_unclipped == -1.0);
    CHECK(s.curve.vertices[1].second == 0.0);  // display clip at d = 0
    CHECK(!s.meets_optimal);
  }
  SUBCASE("complex-center segment equals the optimal one for all n <= 6, nr >= n") {
    for (int n = 1; n <= 6; ++n)
      for (int nr = n; nr <= 6; ++nr) {
        ConstructionInfo info;
        info.kind = ConstructionKind::CyclicQi;
        info.degree = n;
        DmtSegment s = code_dmt_segment(info, nr);
        // exact integer equality with (0, n nr) -> (1, (n-1)(nr-1))
        CHECK(s.d0 == double(n * nr));
        CHECK(s.d1_unclipped == double((n - 1) * (nr - 1)));
        CHECK(s.meets_optimal);
      }
  }
  SUBCASE("ramified codes meet optimal iff n = 2, nr = 1") {
    for (int n = 2; n <= 6; ++n)
      for (int nr = 1; nr <= 6; ++nr) {
        ConstructionInfo info;
        info.kind = ConstructionKind::CyclicQ;
        info.degree = n;
        info.quad_a = -1;
        info.gamma = {-3, 0};  // ramified
        if (n % 2 != 0) continue;  // ramification needs 2 | n
        if (2 * nr < n) {
          CHECK_THROWS_AS(code_dmt_segment(info, nr), OutOfRegime);
          continue;
        }
        DmtSegment s = code_dmt_segment(info, nr);
        CHECK(s.meets_optimal == (n == 2 && nr == 1));
      }
  }
  SUBCASE("unramified codes never meet the optimal segment") {
    for (int n = 2; n <= 6; ++n)
      for (int nr = (n + 1) / 2; nr <= 6; ++nr) {
        ConstructionInfo info;
        info.kind = ConstructionKind::CyclicQ;
        info.degree = n;
        info.quad_a = -1;
        info.gamma = {3, 0};
        DmtSegment s = code_dmt_segment(info, nr);
        CHECK(!s.meets_optimal);
      }
  }
}

TEST_CASE("union bound evaluation") {
  MatrixLattice l2 = builtin(BuiltinCode::L2);
  std::vector<double> radii;
  for (int i = 0; i < 10; ++i) radii.push_back(2.0 * std::pow(10.0, i / 9.0));
  DetSumTable table = inverse_det_sum(l2, 2, radii);

  SUBCASE("r = 0 reduces to rho^{-n nr} S(2)") {
    auto rows = union_bound_eval(table, 2, 4, 1, {100.0}, 0.0);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].radius_wanted == doctest::Approx(2.0));
    CHECK(rows[0].bound == doctest::Approx(std::pow(100.0, -2.0) * table.rows[0].sum));
  }
  SUBCASE("below-range radii use the smallest row and are flagged") {
    auto rows = union_bound_eval(table, 2, 4, 1, {1e-4}, 1.0);
    CHECK(rows[0].extrapolated);
    CHECK(rows[0].radius_used == doctest::Approx(table.rows.front().radius));
  }
  SUBCASE("bound log-slope tracks the closed form at r = 1 and r = 1/2") {
    // within-table rho range: 2 rho^{rn/k} <= 20
    auto slope_of = [&](double r, double rho_lo, double rho_hi) {
      std::vector<double> rhos;
      for (int i = 0; i < 8; ++i)
        rhos.push_back(rho_lo * std::pow(rho_hi / rho_lo, i / 7.0));
      auto rows = union_bound_eval(table, 2, 4, 1, rhos, r);
      std::vector<std::pair<double, double>> pts;
      for (const auto& row : rows) pts.emplace_back(row.rho, row.bound);
      return fit_growth(pts).slope;
    };
    // -(n nr - r (nr + n - 1)) = 0 at r = 1, -1 at r = 1/2
    CHECK(std::abs(slope_of(1.0, 4.0, 90.0) - 0.0) <= 0.3);
    CHECK(std::abs(slope_of(0.5, 16.0, 8100.0) - (-1.0)) <= 0.3);
  }
}

TEST_CASE("consistency triangle on measured tables") {
  // measured slope vs closed-form prediction vs the information lower bound
  struct Case {
    BuiltinCode code;
    int n_r;
    int m;
    double lo, hi;
    double tol;
  };
  for (const Case& c : {Case{BuiltinCode::L1, 1, 2, 8.0, 64.0, 0.5},
                        Case{BuiltinCode::GoldenOrder, 2, 4, 4.0, 10.0, 0.9}}) {
    MatrixLattice lat = builtin(c.code);
    std::vector<double> radii;
    for (int i = 0; i < 8; ++i) radii.push_back(c.lo * std::pow(c.hi / c.lo, i / 7.0));
    DetSumTable t = inverse_det_sum(lat, c.m, radii);
    GrowthFit fit = fit_growth_default(t.sum_points());
    ExponentPrediction pred = predicted_exponent(lat.info, c.n_r);
    double lower = dmt_sum_lower_exponent(lat.n, lat.k, c.n_r);
    CHECK(std::abs(fit.slope - pred.exponent) <= c.tol);
    CHECK(pred.exponent >= lower - 1e-12);
  }
  // the bound itself for every built-in division algebra at admissible n_r
  for (BuiltinCode code : {BuiltinCode::Alamouti, BuiltinCode::L1, BuiltinCode::L2}) {
    MatrixLattice lat = builtin(code);
    for (int nr = 1; nr <= 4; ++nr) {
      ExponentPrediction p = predicted_exponent(lat.info, nr);
      CHECK(p.exponent >= dmt_sum_lower_exponent(lat.n, lat.k, nr) - 1e-12);
    }
  }
  MatrixLattice golden = builtin(BuiltinCode::GoldenOrder);
  for (int nr = 2; nr <= 4; ++nr) {
    ExponentPrediction p = predicted_exponent(golden.info, nr);
    CHECK(p.exponent >= dmt_sum_lower_exponent(golden.n, golden.k, nr) - 1e-12);
  }
}
