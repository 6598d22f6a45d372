#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "detsum/exact.hpp"

namespace detsum {

struct CyclicFieldData;

using ComplexMatrix = Eigen::MatrixXcd;

/// Flatten an n x n complex matrix to a real vector of length 2n^2,
/// row-major with each entry split into (re, im). Euclidean norm of the
/// output equals the Frobenius norm of the input.
Eigen::VectorXd flatten(const ComplexMatrix& x);

/// Real inner product Re tr(X Y^dagger) on M_n(C).
double mat_inner(const ComplexMatrix& x, const ComplexMatrix& y);

double frobenius(const ComplexMatrix& x);

/// |det X| via LU (closed forms for n <= 2).
double det_abs_float(const ComplexMatrix& x);

/// Exact determinant evaluator attached to a built-in construction. eval()
/// returns det(psi(x)) as an element of O_F for the coefficient vector z;
/// the int64 path is the one used while streaming, eval_big is the
/// arbitrary-precision reference.
class ExactDet {
 public:
  virtual ~ExactDet() = default;
  virtual Gauss64 eval(std::span<const std::int64_t> z) const = 0;
  virtual GaussBig eval_big(std::span<const std::int64_t> z) const;
  /// Upper bound on max(|re|,|im|) of eval over |z_i| <= zmax, used to rule
  /// out int64 overflow before an enumeration starts.
  virtual double magnitude_bound(double zmax) const = 0;
  /// Degree of det(psi(x)) in each single coordinate; <= 2 enables the
  /// interpolated inner loop.
  virtual int coord_degree() const { return 2; }
};

enum class ConstructionKind { Raw, NumberField, CyclicQ, CyclicQi };

/// Everything the asymptotics module needs to know about where a lattice
/// came from.
struct ConstructionInfo {
  ConstructionKind kind = ConstructionKind::Raw;
  int degree = 0;           // index n of the algebra / degree of the field
  std::int64_t quad_a = 0;  // E = center(sqrt(a)) for quadratic extensions
  Gauss64 gamma{0, 0};      // non-trivial for cyclic algebras
  bool is_order = false;    // point set is a ring: min |det| is exactly 1
};

struct MatrixLattice {
  int n = 0;  // matrix dimension
  int k = 0;  // lattice rank
  std::vector<ComplexMatrix> basis;
  Eigen::MatrixXd gram;  // gram(i,j) = Re tr(B_i B_j^dagger)
  double covolume = 0.0;
  std::string tag;  // construction tag ("l1", "raw", ...)
  ConstructionInfo info;
  std::shared_ptr<const ExactDet> exact_det;  // null for raw bases
  std::shared_ptr<const CyclicFieldData> field;  // set for field-based codes

  /// Doubled Gram 2G as exact int64 when every entry of 2G is integral
  /// (true for all built-ins); enables exact shell membership tests.
  std::optional<Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>> gram2_int;

  bool has_exact_det() const { return exact_det != nullptr; }
  ComplexMatrix matrix_of(std::span<const std::int64_t> z) const;
  /// z^T G z computed from the double Gram in a fixed summation order.
  double quadratic_form(std::span<const std::int64_t> z) const;
};

/// Assemble Gram and covolume; throws DependentBasis when det(gram) is not
/// safely positive (threshold 1e-10 * (max |gram|)^k).
MatrixLattice build_lattice(std::vector<ComplexMatrix> basis,
                            std::shared_ptr<const ExactDet> exact_det = nullptr,
                            std::string tag = "raw");

struct LatticePoint {
  std::vector<BigInt> coeffs;
  ComplexMatrix matrix;
  double frobenius = 0.0;
  std::optional<GaussBig> det_exact;
  double det_abs = 0.0;
};

LatticePoint point_from_coeffs(const MatrixLattice& lattice, std::span<const std::int64_t> z);

}  // namespace detsum
