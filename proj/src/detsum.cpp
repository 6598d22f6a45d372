#include "detsum/detsum.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "det_fold.hpp"
#include "detsum/constructions.hpp"
#include "detsum/errors.hpp"
#include "detsum/field.hpp"

namespace detsum {

namespace internal {

void check_exact_range(const MatrixLattice& lat, double radius) {
  if (!lat.exact_det) return;
  Eigen::LLT<Eigen::MatrixXd> llt(lat.gram);
  double rmin = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd l = llt.matrixL();
  for (int i = 0; i < lat.k; ++i) rmin = std::min(rmin, l(i, i));
  double zmax = radius / rmin + 2.0;
  if (lat.exact_det->magnitude_bound(zmax) > 2.0e9)
    throw ExactOverflow("determinant values may overflow int64 at this radius");
}

}  // namespace internal

namespace {

void require_increasing(const std::vector<double>& radii) {
  if (radii.empty()) throw Error("empty radius list");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw Error("radii must be strictly increasing");
}

std::vector<double> bucket_bounds(const std::vector<double>& radii) {
  std::vector<double> b(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) b[i] = 2.0 * radii[i] * radii[i];
  return b;
}

std::string coords_str(const std::vector<std::int64_t>& z) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < z.size(); ++i) os << (i ? "," : "") << z[i];
  os << ")";
  return os.str();
}

}  // namespace

std::vector<std::pair<double, double>> DetSumTable::sum_points() const {
  std::vector<std::pair<double, double>> p;
  p.reserve(rows.size());
  for (const auto& r : rows) p.emplace_back(r.radius, r.sum);
  return p;
}

std::vector<std::pair<double, double>> DetSumTable::unit_points() const {
  std::vector<std::pair<double, double>> p;
  p.reserve(rows.size());
  for (const auto& r : rows) p.emplace_back(r.radius, static_cast<double>(r.unit_count));
  return p;
}

DetSumTable inverse_det_sum(const MatrixLattice& lattice, int m, std::vector<double> radii,
                            ZeroDetPolicy policy, const EnumOptions& opts) {
  if (m < 1) throw Error("exponent m must be a positive integer");
  require_increasing(radii);
  const double rmax = radii.back();

  internal::DetStats stats;
  bool exact = lattice.has_exact_det();
  if (exact) {
    internal::check_exact_range(lattice, rmax);
    internal::ExactDetFold fold(lattice, m, bucket_bounds(radii));
    enumerate_ball(lattice, rmax, fold, opts);
    stats = fold.stats();
  } else {
    internal::FloatDetFold fold(lattice, m, bucket_bounds(radii));
    enumerate_ball(lattice, rmax, fold, opts);
    stats = fold.stats();
  }

  if (stats.zero_count > 0 && policy == ZeroDetPolicy::Reject)
    throw ZeroDeterminantEncountered("determinant zero at coefficients " +
                                     coords_str(stats.first_zero_z));

  DetSumTable table;
  table.tag = lattice.tag;
  table.m = m;
  table.exact = exact;
  table.skipped = stats.zero_count;
  double vol_pow = std::pow(lattice.covolume,
                            static_cast<double>(m) * lattice.n / static_cast<double>(lattice.k));
  std::uint64_t ccum = 0, ucum = 0;
  kahan::Sum scum;
  for (std::size_t b = 0; b < radii.size(); ++b) {
    ccum += stats.count[b];
    ucum += stats.units[b];
    scum.merge(stats.sum[b]);
    DetSumRow row;
    row.radius = radii[b];
    row.count = ccum;
    row.sum = scum.s;
    row.unit_count = ucum;
    row.normalized = vol_pow * scum.s;
    table.rows.push_back(row);
  }
  return table;
}

std::vector<std::uint64_t> unit_count(const MatrixLattice& lattice, std::vector<double> radii,
                                      const EnumOptions& opts) {
  if (!lattice.has_exact_det()) throw Error("unit counting needs an exact determinant evaluator");
  require_increasing(radii);
  internal::check_exact_range(lattice, radii.back());
  internal::ExactDetFold fold(lattice, 2, bucket_bounds(radii));
  enumerate_ball(lattice, radii.back(), fold, opts);
  std::vector<std::uint64_t> out(radii.size());
  std::uint64_t cum = 0;
  for (std::size_t b = 0; b < radii.size(); ++b) {
    cum += fold.stats().units[b];
    out[b] = cum;
  }
  return out;
}

namespace {

const CyclicFieldData& nf_field(const MatrixLattice& lat) {
  if (lat.info.kind != ConstructionKind::NumberField || !lat.field || lat.field->degree != 2 ||
      lat.field->base != BaseField::Qi)
    throw NotANumberFieldLattice("operation needs a degree-2 diagonal number-field lattice");
  return *lat.field;
}

/// Exact z^T (2G) z for field coordinates (re c0, im c0, re c1, im c1).
BigInt q2_exact(const MatrixLattice& lat, const FieldElem& x) {
  const auto& g2 = *lat.gram2_int;
  std::vector<BigInt> z(4);
  z[0] = x[0].a;
  z[1] = x[0].b;
  z[2] = x[1].a;
  z[3] = x[1].b;
  BigInt q = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) q += BigInt(g2(i, j)) * z[i] * z[j];
  return q;
}

}  // namespace

FieldElem fundamental_unit(const MatrixLattice& nf_lattice) {
  const CyclicFieldData& f = nf_field(nf_lattice);
  static std::mutex mu;
  static std::map<std::string, FieldElem> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f.disc_tag);
    if (it != cache.end()) return it->second;
  }

  // smallest-Frobenius nontorsion unit within radius 16
  std::vector<std::int64_t> best;
  double best_q2 = std::numeric_limits<double>::infinity();
  enumerate_points(nf_lattice, 16.0, [&](std::span<const std::int64_t> z, double q2) {
    Gauss64 d = nf_lattice.exact_det->eval(z);
    if (d.a * d.a + d.b * d.b != 1) return;
    bool torsion = z[2] == 0 && z[3] == 0;
    if (torsion) return;
    std::vector<std::int64_t> zz(z.begin(), z.end());
    if (q2 < best_q2 || (q2 == best_q2 && zz < best)) {
      best_q2 = q2;
      best = zz;
    }
  });
  if (best.empty()) throw Error("no nontorsion unit within radius 16");

  FieldElem u(f.zero());
  u[0] = GaussBig(BigInt(best[0]), BigInt(best[1]));
  u[1] = GaussBig(BigInt(best[2]), BigInt(best[3]));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(f.disc_tag, u);
  return u;
}

std::uint64_t unit_orbit_count(const MatrixLattice& nf_lattice, const FieldElem& x, double radius) {
  const CyclicFieldData& f = nf_field(nf_lattice);
  if (!nf_lattice.gram2_int) throw Error("unit orbit counting needs an integral Gram");
  bool zero = true;
  for (const auto& c : x)
    if (!c.is_zero()) zero = false;
  if (zero) throw Error("x must be nonzero");

  FieldElem u = fundamental_unit(nf_lattice);
  // u^{-1} = N(u) sigma(u) since u sigma(u) = N(u) = +-1
  GaussBig nu = f.relative_norm(u);
  FieldElem uinv = f.scale(nu, f.apply_galois(u));

  // ||psi(x u^t)||^2 is strictly convex in t; walk each direction until the
  // value is both outside the ball and no longer descending.
  const double bound2 = 2.0 * radius * radius;
  std::uint64_t slots = 0;
  auto walk = [&](const FieldElem& start, const FieldElem& step) {
    FieldElem y = start;
    BigInt q = q2_exact(nf_lattice, y);
    BigInt prev = q + 1;
    for (int iter = 0; iter < 100000; ++iter) {
      if (static_cast<double>(q) <= bound2)
        ++slots;
      else if (q >= prev)
        break;  // past the minimum and outside
      prev = q;
      y = f.mul(y, step);
      q = q2_exact(nf_lattice, y);
    }
  };
  walk(x, u);                      // t = 0, 1, 2, ...
  walk(f.mul(x, uinv), uinv);      // t = -1, -2, ...
  // torsion {1, i, -1, -i} preserves the Frobenius norm
  return 4 * slots;
}

std::vector<std::uint64_t> qi_ideal_counts(std::uint64_t n_max) {
  if (n_max > (1ull << 26)) throw Error("ideal count table too large");
  std::vector<std::uint64_t> lattice_points(n_max + 1, 0);
  std::uint64_t amax = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n_max))) + 1;
  for (std::uint64_t a = 0; a <= amax; ++a) {
    std::uint64_t a2 = a * a;
    if (a2 > n_max) break;
    for (std::uint64_t b = 0; b <= amax; ++b) {
      std::uint64_t n = a2 + b * b;
      if (n > n_max) break;
      if (n == 0) continue;
      // (+-a, +-b) sign choices
      std::uint64_t mult = (a == 0 || b == 0) ? 2 : 4;
      lattice_points[n] += mult;
    }
  }
  std::vector<std::uint64_t> ideals(n_max + 1, 0);
  for (std::uint64_t n = 1; n <= n_max; ++n) ideals[n] = lattice_points[n] / 4;
  return ideals;
}

double dedekind_zeta_qi_truncated(double s, std::uint64_t n_max) {
  if (!(s > 1.0)) throw Error("zeta truncation needs s > 1");
  if (n_max < 1) throw Error("n_max must be >= 1");
  auto ideals = qi_ideal_counts(n_max);
  kahan::Sum acc;
  for (std::uint64_t n = 1; n <= n_max; ++n)
    if (ideals[n] > 0)
      acc.add(static_cast<double>(ideals[n]) * std::exp(-s * std::log(static_cast<double>(n))));
  return acc.s;
}

}  // namespace detsum
