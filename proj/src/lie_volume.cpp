#include "detsum/lie_volume.hpp"

#include "detsum/errors.hpp"

namespace detsum {

Rational LinearForm::eval(const std::vector<Rational>& diag) const {
  if (coeff.size() != diag.size()) throw Error("linear form / diagonal size mismatch");
  Rational s;
  for (std::size_t i = 0; i < coeff.size(); ++i) s += coeff[i] * diag[i];
  return s;
}

LinearForm LinearForm::canonical() const {
  LinearForm f = *this;
  Rational last = f.coeff.back();
  for (auto& c : f.coeff) c -= last;
  return f;
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
  if (coeff.size() != o.coeff.size()) throw Error("linear form size mismatch");
  for (std::size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
  return *this;
}

LinearForm operator*(const Rational& c, const LinearForm& f) {
  LinearForm r = f;
  for (auto& x : r.coeff) x = c * x;
  return r;
}

const char* family_name(RootFamily family) {
  switch (family) {
    case RootFamily::Complex: return "complex";
    case RootFamily::Real: return "real";
    case RootFamily::Quaternion: return "quaternion";
  }
  return "?";
}

namespace {

LinearForm e_minus(int ambient, int i, int j) {
  LinearForm f;
  f.coeff.assign(ambient, Rational(0));
  f.coeff[i] = Rational(1);
  f.coeff[j] = Rational(-1);
  return f;
}

LinearForm e_single(int ambient, int i) {
  LinearForm f;
  f.coeff.assign(ambient, Rational(0));
  f.coeff[i] = Rational(1);
  return f;
}

}  // namespace

RestrictedRootData build_root_data(RootFamily family, int n) {
  if (n < 2) throw RankTooSmall("rank data needs n >= 2");
  RestrictedRootData d;
  d.family = family;
  const bool quat = family == RootFamily::Quaternion;
  const int m = n;                    // block size (m for sl_m(H))
  d.ambient = quat ? 2 * m : n;
  d.rank = m - 1;
  const int mult = family == RootFamily::Complex ? 2 : (family == RootFamily::Real ? 1 : 4);

  // positive restricted roots (e_i - e_j), i < j <= m, on the first block
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      d.positive_roots.emplace_back(e_minus(d.ambient, i, j), mult);
  for (int i = 0; i + 1 < m; ++i) d.simple_roots.push_back(e_minus(d.ambient, i, i + 1));
  d.highest_weight = e_single(d.ambient, 0);

  // raw dual vectors: E_1+..+E_j - j E_m (duplicated across blocks for H)
  for (int j = 1; j <= d.rank; ++j) {
    std::vector<Rational> v(d.ambient, Rational(0));
    for (int i = 0; i < j; ++i) {
      v[i] = Rational(1);
      if (quat) v[m + i] = Rational(1);
    }
    v[m - 1] = Rational(-j);
    if (quat) v[2 * m - 1] = Rational(-j);
    d.dual_basis_raw.push_back(std::move(v));
  }

  // fundamental coweights: gamma_i(w_j) = delta_ij exactly
  for (int j = 1; j <= d.rank; ++j) {
    std::vector<Rational> v(d.ambient, Rational(0));
    Rational inside(static_cast<std::int64_t>(m - j), m);   // 1 - j/m
    Rational outside(-static_cast<std::int64_t>(j), m);     // -j/m
    for (int i = 0; i < m; ++i) {
      Rational val = i < j ? inside : outside;
      v[i] = val;
      if (quat) v[m + i] = val;
    }
    d.coweights.push_back(std::move(v));
  }
  return d;
}

Rational volume_exponent(const RestrictedRootData& data, VolumeExponentDetail* detail,
                         bool use_coweights) {
  if (data.rank < 1) throw RankTooSmall("no dual vectors");
  // psi = (1/2) sum m_g g over positive restricted roots
  LinearForm psi;
  psi.coeff.assign(data.ambient, Rational(0));
  for (const auto& [root, mult] : data.positive_roots)
    psi += Rational(mult, 2) * root;

  const auto& duals = use_coweights ? data.coweights : data.dual_basis_raw;
  VolumeExponentDetail local;
  Rational best;
  int argmin = -1;
  bool tie = false;
  for (int j = 0; j < data.rank; ++j) {
    Rational denom = Rational(2) * psi.eval(duals[j]);
    if (denom.is_zero()) throw Error("psi vanishes on a dual vector");
    Rational val = data.highest_weight.eval(duals[j]) / denom;
    local.psi_values.push_back(denom);
    local.weight_values.push_back(val);
    if (argmin < 0 || val < best) {
      best = val;
      argmin = j;
      tie = false;
    } else if (val == best) {
      tie = true;
    }
  }
  if (tie) throw NonUniqueMinimum("growth-rate minimum attained at two dual vectors");
  local.argmin = argmin;
  local.t = Rational(1) / best;
  if (detail) *detail = local;
  return local.t;
}

Rational unit_growth_prediction(GrowthRegime regime, int n) {
  switch (regime) {
    case GrowthRegime::ComplexQuadraticCenter:
      return volume_exponent(build_root_data(RootFamily::Complex, n));
    case GrowthRegime::RationalCenterUnramified:
      return volume_exponent(build_root_data(RootFamily::Real, n));
    case GrowthRegime::RationalCenterRamified: {
      if (n % 2 != 0) throw OddIndexRamified("ramified case needs an even index");
      int m = n / 2;
      // m = 1: the determinant-one group is compact, the ball volume is
      // bounded and the exponent is 0
      if (m == 1) return Rational(0);
      return volume_exponent(build_root_data(RootFamily::Quaternion, m));
    }
    case GrowthRegime::NumberFieldDiagonal:
      throw OutOfRegime("diagonal codes grow polylogarithmically, not as a power");
  }
  throw Error("unknown regime");
}

}  // namespace detsum
