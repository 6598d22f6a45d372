#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "detsum/enumerate.hpp"
#include "detsum/field.hpp"
#include "detsum/lattice.hpp"

namespace detsum {

enum class ZeroDetPolicy { Reject, Skip };

struct DetSumRow {
  double radius = 0.0;
  std::uint64_t count = 0;      // |L(M)|
  double sum = 0.0;             // S_L^m(M)
  std::uint64_t unit_count = 0; // points with |det|^2 == 1 (exact path only)
  double normalized = 0.0;      // Vol(L)^{mn/k} * sum
};

struct DetSumTable {
  std::string tag;
  int m = 0;
  bool exact = true;            // false when determinants came from float LU
  std::uint64_t skipped = 0;    // zero-determinant points skipped (Skip policy)
  std::vector<DetSumRow> rows;

  std::vector<std::pair<double, double>> sum_points() const;
  std::vector<std::pair<double, double>> unit_points() const;
};

/// Inverse determinant sum table over the given radii (strictly increasing).
/// One streaming enumeration at max(radii); terms 1/|det|^m are formed from
/// the exact integer |det|^2 as exp(-(m/2) ln), accumulated in Kahan order.
DetSumTable inverse_det_sum(const MatrixLattice& lattice, int m, std::vector<double> radii,
                            ZeroDetPolicy policy = ZeroDetPolicy::Reject,
                            const EnumOptions& opts = {});

/// Exact per-radius counts of points with |det|^2 == 1.
std::vector<std::uint64_t> unit_count(const MatrixLattice& lattice, std::vector<double> radii,
                                      const EnumOptions& opts = {});

/// A_x(M): number of units u of the (degree-2 built-in) number field with
/// ||psi(x u)||_F <= M. Units are generated as +-i^a phi0^t from the cached
/// fundamental unit.
std::uint64_t unit_orbit_count(const MatrixLattice& nf_lattice, const FieldElem& x, double radius);

/// Fundamental unit of a degree-2 built-in number-field lattice, found as
/// the smallest-Frobenius nontorsion unit within radius 16 (cached per tag).
FieldElem fundamental_unit(const MatrixLattice& nf_lattice);

/// Truncated Dedekind zeta of Q(i): sum over ideals of norm <= N of
/// 1/norm^s, ideal counts from the Gaussian-integer lattice (PID, 4 units).
double dedekind_zeta_qi_truncated(double s, std::uint64_t n_max);

/// Ideal count a_n of Z[i]: (1/4) #{(a,b) != 0 : a^2+b^2 = n}.
std::vector<std::uint64_t> qi_ideal_counts(std::uint64_t n_max);

}  // namespace detsum
