#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "detsum/detsum.hpp"
#include "detsum/lattice.hpp"

namespace detsum {

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 1.0;
  std::vector<std::pair<double, double>> points_used;  // (log M, log value)
  int zeros_excluded = 0;
};

/// OLS of log(value) on log(M). Points with value <= 0 are excluded (and
/// counted); requires >= 4 usable points spanning at least half a decade.
GrowthFit fit_growth(const std::vector<std::pair<double, double>>& table,
                     std::optional<std::pair<double, double>> window = std::nullopt);

/// Default fit policy: drop the smallest 25% of radii (transient regime).
GrowthFit fit_growth_default(const std::vector<std::pair<double, double>>& table);

/// n_r k/n + k - k/n - 2 n n_r: every power-law cap on S_L^{2n_r} must sit
/// at or above this exponent.
double dmt_sum_lower_exponent(int n, int k, int n_r);

enum class GrowthRegime {
  ComplexQuadraticCenter,  // 2n^2-2n, needs n_r >= n
  RationalCenterUnramified,  // n^2-n, needs n_r >= n/2
  RationalCenterRamified,    // n^2-2n, needs n_r >= n/2 and 2|n
  NumberFieldDiagonal,       // polylog, exponent reported as 0
};

const char* regime_name(GrowthRegime regime);

struct ExponentPrediction {
  double exponent = 0.0;
  bool polylog = false;
  GrowthRegime regime;
  int n = 0;
  int k = 0;
};

/// Closed-form growth exponent of the inverse determinant sum for the
/// construction, or OutOfRegime when n_r is below the regime threshold.
ExponentPrediction predicted_exponent(const ConstructionInfo& info, int n_r);

struct DmtCurve {
  std::vector<std::pair<double, double>> vertices;  // (r, d), r increasing
  std::string label;
};

/// Optimal tradeoff: piecewise linear through (r, (n_t-r)(n_r-r)).
DmtCurve optimal_dmt(int n_t, int n_r);

struct DmtSegment {
  DmtCurve curve;          // clipped at d = 0 for display
  double d0 = 0.0;         // value at r = 0
  double d1_unclipped = 0.0;  // affine value at r = 1
  bool meets_optimal = false; // coincides with optimal on [0,1]
};

/// Achieved tradeoff segment on r in [0,1] for the construction regime.
DmtSegment code_dmt_segment(const ConstructionInfo& info, int n_r);

struct UnionBoundRow {
  double rho = 0.0;
  double radius_wanted = 0.0;
  double radius_used = 0.0;
  bool extrapolated = false;
  double bound = 0.0;
};

/// Evaluate rho^{-n n_r (1 - 2nr/k)} S(2 rho^{rn/k}) against a measured sum
/// table; the nearest tabulated radius is used and flagged when outside the
/// table range.
std::vector<UnionBoundRow> union_bound_eval(const DetSumTable& table, int n, int k, int n_r,
                                            const std::vector<double>& rho_grid, double r);

}  // namespace detsum
