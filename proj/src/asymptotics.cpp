#include "detsum/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "detsum/constructions.hpp"
#include "detsum/errors.hpp"

namespace detsum {

GrowthFit fit_growth(const std::vector<std::pair<double, double>>& table,
                     std::optional<std::pair<double, double>> window) {
  GrowthFit fit;
  for (const auto& [m, v] : table) {
    if (window && (m < window->first || m > window->second)) continue;
    if (!(v > 0.0)) {
      ++fit.zeros_excluded;
      continue;
    }
    fit.points_used.emplace_back(std::log(m), std::log(v));
  }
  const std::size_t n = fit.points_used.size();
  if (n < 4) throw InsufficientRange("need at least 4 usable points");
  double xmin = fit.points_used.front().first, xmax = xmin;
  for (const auto& [x, y] : fit.points_used) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
  }
  if (xmax - xmin < 0.5 * std::log(10.0))
    throw InsufficientRange("radii span less than half a decade");

  double sx = 0, sy = 0;
  for (const auto& [x, y] : fit.points_used) {
    sx += x;
    sy += y;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [x, y] : fit.points_used) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0, ss_tot = 0;
  for (const auto& [x, y] : fit.points_used) {
    double r = y - (fit.intercept + fit.slope * x);
    ss_res += r * r;
    ss_tot += (y - my) * (y - my);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.stderr_slope = n > 2 ? std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx) : 0.0;
  return fit;
}

GrowthFit fit_growth_default(const std::vector<std::pair<double, double>>& table) {
  // transient regime: drop the smallest 25% of radii
  std::vector<double> ms;
  for (const auto& [m, v] : table) ms.push_back(m);
  std::sort(ms.begin(), ms.end());
  std::size_t drop = ms.size() / 4;
  double lo = ms.empty() ? 0.0 : ms[drop];
  return fit_growth(table, std::make_pair(lo, ms.back()));
}

double dmt_sum_lower_exponent(int n, int k, int n_r) {
  if (n < 1 || k < 1 || k > 2 * n * n || n_r < 1) throw Error("invalid (n, k, n_r)");
  double kn = static_cast<double>(k) / n;
  return n_r * kn + k - kn - 2.0 * n * n_r;
}

const char* regime_name(GrowthRegime regime) {
  switch (regime) {
    case GrowthRegime::ComplexQuadraticCenter: return "complex-quadratic-center";
    case GrowthRegime::RationalCenterUnramified: return "rational-center-unramified";
    case GrowthRegime::RationalCenterRamified: return "rational-center-ramified";
    case GrowthRegime::NumberFieldDiagonal: return "number-field-diagonal";
  }
  return "?";
}

ExponentPrediction predicted_exponent(const ConstructionInfo& info, int n_r) {
  if (n_r < 1) throw Error("n_r must be >= 1");
  ExponentPrediction p;
  p.n = info.degree;
  const int n = info.degree;
  switch (info.kind) {
    case ConstructionKind::NumberField:
      p.regime = GrowthRegime::NumberFieldDiagonal;
      p.exponent = 0.0;
      p.polylog = true;
      p.k = 2 * n;
      return p;
    case ConstructionKind::CyclicQi:
      p.regime = GrowthRegime::ComplexQuadraticCenter;
      p.k = 2 * n * n;
      if (n_r < n) throw OutOfRegime("complex-center growth law needs n_r >= n");
      p.exponent = 2.0 * n * n - 2.0 * n;
      return p;
    case ConstructionKind::CyclicQ: {
      bool ram = infinite_place_ramified(info);
      p.k = n * n;
      if (2 * n_r < n)
        throw OutOfRegime("rational-center growth law needs n_r >= n/2");
      if (ram) {
        p.regime = GrowthRegime::RationalCenterRamified;
        p.exponent = static_cast<double>(n) * n - 2.0 * n;
      } else {
        p.regime = GrowthRegime::RationalCenterUnramified;
        p.exponent = static_cast<double>(n) * n - 1.0 * n;
      }
      return p;
    }
    case ConstructionKind::Raw:
      break;
  }
  throw OutOfRegime("no growth prediction for raw lattices");
}

DmtCurve optimal_dmt(int n_t, int n_r) {
  if (n_t < 1 || n_r < 1) throw Error("antenna counts must be positive");
  DmtCurve c;
  c.label = "optimal";
  for (int r = 0; r <= std::min(n_t, n_r); ++r)
    c.vertices.emplace_back(static_cast<double>(r),
                            static_cast<double>((n_t - r) * (n_r - r)));
  return c;
}

DmtSegment code_dmt_segment(const ConstructionInfo& info, int n_r) {
  const int n = info.degree;
  DmtSegment seg;
  double d1 = 0.0;
  switch (info.kind) {
    case ConstructionKind::NumberField:
      // (r, n n_r (1-r)^+)
      d1 = 0.0;
      seg.curve.label = "number-field";
      break;
    case ConstructionKind::CyclicQi:
      if (n_r < n) throw OutOfRegime("complex-center segment needs n_r >= n");
      d1 = static_cast<double>(n) * n_r - n - n_r + 1;
      seg.curve.label = "complex-center";
      break;
    case ConstructionKind::CyclicQ: {
      if (2 * n_r < n) throw OutOfRegime("rational-center segment needs n_r >= n/2");
      bool ram = infinite_place_ramified(info);
      if (ram) {
        d1 = static_cast<double>(n) * n_r - 2.0 * n_r - n + 2;
        seg.curve.label = "rational-center-ramified";
      } else {
        d1 = static_cast<double>(n) * n_r - 2.0 * n_r - n + 1;
        seg.curve.label = "rational-center-unramified";
      }
      break;
    }
    case ConstructionKind::Raw:
      throw OutOfRegime("no tradeoff segment for raw lattices");
  }
  seg.d0 = static_cast<double>(n) * n_r;
  seg.d1_unclipped = d1;
  // the optimal curve's first segment falls from n n_r to (n-1)(n_r-1)
  seg.meets_optimal = d1 == static_cast<double>((n - 1) * (n_r - 1));
  seg.curve.vertices = {{0.0, seg.d0}, {1.0, std::max(0.0, d1)}};
  return seg;
}

std::vector<UnionBoundRow> union_bound_eval(const DetSumTable& table, int n, int k, int n_r,
                                            const std::vector<double>& rho_grid, double r) {
  if (table.rows.empty()) throw Error("empty sum table");
  std::vector<UnionBoundRow> out;
  out.reserve(rho_grid.size());
  for (double rho : rho_grid) {
    UnionBoundRow row;
    row.rho = rho;
    row.radius_wanted = 2.0 * std::pow(rho, r * n / k);
    // nearest tabulated radius in log scale
    double best = std::numeric_limits<double>::infinity();
    const DetSumRow* pick = nullptr;
    for (const auto& tr : table.rows) {
      double d = std::abs(std::log(tr.radius) - std::log(row.radius_wanted));
      if (d < best) {
        best = d;
        pick = &tr;
      }
    }
    row.radius_used = pick->radius;
    row.extrapolated = row.radius_wanted < table.rows.front().radius ||
                       row.radius_wanted > table.rows.back().radius;
    double exponent = -static_cast<double>(n) * n_r * (1.0 - 2.0 * n * r / k);
    row.bound = std::pow(rho, exponent) * pick->sum;
    out.push_back(row);
  }
  return out;
}

}  // namespace detsum
