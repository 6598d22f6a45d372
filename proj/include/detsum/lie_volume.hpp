#pragma once

#include <string>
#include <vector>

#include "detsum/asymptotics.hpp"
#include "detsum/rational.hpp"

namespace detsum {

/// Linear form on the diagonal functionals e_1..e_N, evaluated on trace-zero
/// diagonal matrices; adding a constant to every coefficient does not change
/// any evaluation.
struct LinearForm {
  std::vector<Rational> coeff;

  Rational eval(const std::vector<Rational>& diag) const;
  /// Canonical representative with the last coefficient 0.
  LinearForm canonical() const;
  LinearForm& operator+=(const LinearForm& o);
  friend LinearForm operator*(const Rational& c, const LinearForm& f);
};

enum class RootFamily { Complex, Real, Quaternion };

const char* family_name(RootFamily family);

struct RestrictedRootData {
  RootFamily family;
  int rank = 0;     // number of simple restricted roots
  int ambient = 0;  // diagonal size N
  std::vector<std::pair<LinearForm, int>> positive_roots;  // with multiplicities
  std::vector<LinearForm> simple_roots;
  LinearForm highest_weight;
  /// Raw dual vectors as printed in the source computation
  /// (E_1+...+E_j - j E_N pattern); integer entries.
  std::vector<std::vector<Rational>> dual_basis_raw;
  /// Fundamental coweights: the basis actually dual to the simple roots,
  /// gamma_i(coweight_j) = delta_ij exactly.
  std::vector<std::vector<Rational>> coweights;
};

/// Root data for sl_n(C) as a real algebra (mult 2), sl_n(R) (mult 1), or
/// sl_m(H) (mult 4, ambient 2m). Throws RankTooSmall for n < 2.
RestrictedRootData build_root_data(RootFamily family, int n);

struct VolumeExponentDetail {
  std::vector<Rational> psi_values;     // 2 psi(beta~_j) per dual vector
  std::vector<Rational> weight_values;  // lambda_1(beta_j)
  int argmin = -1;
  Rational t;  // growth exponent
};

/// Ball-volume growth exponent T: psi = (1/2) sum m_g g over positive
/// restricted roots, beta_j = beta~_j / (2 psi(beta~_j)), T = 1 / min_j
/// lambda_1(beta_j). Throws NonUniqueMinimum if the minimum ties.
Rational volume_exponent(const RestrictedRootData& data, VolumeExponentDetail* detail = nullptr,
                         bool use_coweights = false);

/// Unit-group growth exponent for a construction regime; the ramified n = 2
/// case is the compact rank-0 group with exponent 0.
Rational unit_growth_prediction(GrowthRegime regime, int n);

}  // namespace detsum
