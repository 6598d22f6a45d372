#include "detsum/lattice.hpp"

#include <Eigen/LU>
#include <cmath>

#include "detsum/errors.hpp"

namespace detsum {

Eigen::VectorXd flatten(const ComplexMatrix& x) {
  const int n = static_cast<int>(x.rows());
  Eigen::VectorXd v(2 * n * n);
  int p = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      v[p++] = x(r, c).real();
      v[p++] = x(r, c).imag();
    }
  return v;
}

double mat_inner(const ComplexMatrix& x, const ComplexMatrix& y) {
  double s = 0.0;
  for (int r = 0; r < x.rows(); ++r)
    for (int c = 0; c < x.cols(); ++c)
      s += x(r, c).real() * y(r, c).real() + x(r, c).imag() * y(r, c).imag();
  return s;
}

double frobenius(const ComplexMatrix& x) { return std::sqrt(mat_inner(x, x)); }

double det_abs_float(const ComplexMatrix& x) {
  const auto n = x.rows();
  if (n == 1) return std::abs(x(0, 0));
  if (n == 2) return std::abs(x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0));
  return std::abs(Eigen::PartialPivLU<ComplexMatrix>(x).determinant());
}

GaussBig ExactDet::eval_big(std::span<const std::int64_t> z) const {
  Gauss64 v = eval(z);
  return GaussBig(BigInt(v.a), BigInt(v.b));
}

ComplexMatrix MatrixLattice::matrix_of(std::span<const std::int64_t> z) const {
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < k; ++i)
    if (z[i] != 0) x += static_cast<double>(z[i]) * basis[i];
  return x;
}

double MatrixLattice::quadratic_form(std::span<const std::int64_t> z) const {
  double q = 0.0;
  for (int i = 0; i < k; ++i) {
    if (z[i] == 0) continue;
    double row = 0.0;
    for (int j = 0; j < k; ++j) row += gram(i, j) * static_cast<double>(z[j]);
    q += static_cast<double>(z[i]) * row;
  }
  return q;
}

MatrixLattice build_lattice(std::vector<ComplexMatrix> basis,
                            std::shared_ptr<const ExactDet> exact_det, std::string tag) {
  if (basis.empty()) throw DependentBasis("empty basis");
  MatrixLattice lat;
  lat.n = static_cast<int>(basis[0].rows());
  lat.k = static_cast<int>(basis.size());
  if (lat.k > 2 * lat.n * lat.n) throw DependentBasis("rank exceeds 2n^2");
  for (const auto& b : basis)
    if (b.rows() != lat.n || b.cols() != lat.n) throw DependentBasis("mixed matrix dimensions");
  lat.basis = std::move(basis);
  lat.tag = std::move(tag);
  lat.exact_det = std::move(exact_det);

  lat.gram.resize(lat.k, lat.k);
  for (int i = 0; i < lat.k; ++i)
    for (int j = i; j < lat.k; ++j) {
      double g = mat_inner(lat.basis[i], lat.basis[j]);
      lat.gram(i, j) = g;
      lat.gram(j, i) = g;
    }

  double gmax = lat.gram.cwiseAbs().maxCoeff();
  double det = lat.gram.determinant();
  if (!(det > 1e-10 * std::pow(std::max(gmax, 1e-300), lat.k)))
    throw DependentBasis("basis matrices are linearly dependent over R");
  lat.covolume = std::sqrt(det);

  // Keep 2G exactly when it is integral (covers half-integral Gram entries).
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> g2(lat.k, lat.k);
  bool integral = true;
  for (int i = 0; i < lat.k && integral; ++i)
    for (int j = 0; j < lat.k; ++j) {
      double v = 2.0 * lat.gram(i, j);
      double r = std::round(v);
      if (std::abs(v - r) > 1e-9 * std::max(1.0, std::abs(v)) || std::abs(r) > 9e15) {
        integral = false;
        break;
      }
      g2(i, j) = static_cast<std::int64_t>(r);
    }
  if (integral) lat.gram2_int = std::move(g2);
  return lat;
}

LatticePoint point_from_coeffs(const MatrixLattice& lattice, std::span<const std::int64_t> z) {
  LatticePoint p;
  p.coeffs.assign(z.begin(), z.end());
  p.matrix = lattice.matrix_of(z);
  p.frobenius = std::sqrt(std::max(0.0, lattice.quadratic_form(z)));
  if (lattice.exact_det) {
    GaussBig d = lattice.exact_det->eval_big(z);
    p.det_abs = std::sqrt(static_cast<double>(d.norm2()));
    p.det_exact = std::move(d);
  } else {
    p.det_abs = det_abs_float(p.matrix);
  }
  return p;
}

}  // namespace detsum
