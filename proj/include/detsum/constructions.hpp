#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "detsum/field.hpp"
#include "detsum/lattice.hpp"

namespace detsum {

/// Cyclic algebra (E/F, sigma, gamma) descriptor.
struct CyclicAlgebraSpec {
  CyclicFieldData field;
  GaussBig gamma;
  BaseField center = BaseField::Q;
};

enum class BuiltinCode {
  Gaussian,     // Z[i] in M_1(C)
  NfQiSqrt5,    // psi(Z[i][phi]), diagonal embedding
  NfQiSqrt2,    // psi(Z[i][sqrt2])
  Alamouti,     // (Q(i)/Q, sigma, -1), natural order
  L1,           // (Q(i)/Q, sigma, 3)
  L2,           // (Q(i)/Q, sigma, -3)
  GoldenOrder,  // (Q(i,sqrt5)/Q(i), sigma, i), natural order
};

const char* builtin_name(BuiltinCode code);
std::optional<BuiltinCode> builtin_from_name(const std::string& name);
std::vector<BuiltinCode> all_builtins();

/// Diagonal number-field code psi(O) with psi(x) = diag(sigma_1(x), ...,
/// sigma_n(x)); rank 2n over Z, exact determinant N_{E/F}.
MatrixLattice diagonal_nf_lattice(const CyclicFieldData& field, std::string tag = "");

/// Natural-order code of a cyclic algebra via the left regular
/// representation. Rank n^2 for center Q, 2n^2 for center Q(i). Built-in
/// closed-form determinants exist for n = 2; larger n requires complete
/// user-supplied field data.
MatrixLattice cyclic_algebra_lattice(const CyclicAlgebraSpec& spec, std::string tag = "");

/// True iff the quaternion algebra (a, gamma)_Q is ramified at the infinite
/// place, i.e. tensoring with R gives the Hamilton quaternions. Requires
/// center Q, n = 2, E = Q(sqrt a).
bool infinite_place_ramified(const CyclicAlgebraSpec& spec);
bool infinite_place_ramified(const ConstructionInfo& info);

MatrixLattice builtin(BuiltinCode code);

/// Algebra multiplication (x0 + u x1)(y0 + u y1) for index-2 algebras,
/// exact in field coordinates.
struct AlgebraElem {
  FieldElem x0, x1;
};
AlgebraElem algebra_mul(const CyclicAlgebraSpec& spec, const AlgebraElem& x, const AlgebraElem& y);

/// Exact reduced norm of an index-2 element: N(x0) - gamma N(x1).
GaussBig algebra_nrd(const CyclicAlgebraSpec& spec, const AlgebraElem& x);

struct NvdReport {
  std::uint64_t points = 0;
  std::int64_t min_det2 = 0;  // min |det|^2 over nonzero points (exact integer)
  std::vector<std::int64_t> min_coeffs;
  double radius = 0.0;
};

/// Scan L(M) with the exact determinant predicate. Throws NvdViolation when
/// a nonzero point with det = 0 shows up; otherwise reports min |det|.
NvdReport nvd_check(const MatrixLattice& lattice, double radius);

/// Spec of a user construction parsed from the JSON descriptor.
CyclicAlgebraSpec user_algebra(std::int64_t a, std::int64_t gamma, BaseField center);

}  // namespace detsum
