#include "detsum/constructions.hpp"

#include <Eigen/Cholesky>
#include <array>
#include <cmath>
#include <sstream>

#include "det_fold.hpp"
#include "detsum/enumerate.hpp"
#include "detsum/errors.hpp"

namespace detsum {

namespace {

Gauss64 gauss64_of(const GaussBig& g) {
  return {static_cast<std::int64_t>(g.a), static_cast<std::int64_t>(g.b)};
}

/// Closed-form reduced norm for index-2 constructions. Elements are
/// x = x_0 (+ u x_1) with x_l = c_{l,0} + c_{l,1} w in the quadratic field,
/// N(x_l) = c0^2 + c0 c1 tr + c1^2 nm, det = N(x_0) - gamma N(x_1).
/// Coordinate layout: per x_l, (c0, c1) over Z for base Q or
/// (re c0, im c0, re c1, im c1) over Z[i].
class CyclicNormDet final : public ExactDet {
 public:
  CyclicNormDet(BaseField base, Gauss64 tr, Gauss64 nm, Gauss64 gamma, int parts)
      : base_(base), tr_(tr), nm_(nm), gamma_(gamma), parts_(parts) {}

  Gauss64 eval(std::span<const std::int64_t> z) const override {
    int stride = base_ == BaseField::Qi ? 4 : 2;
    Gauss64 n0 = norm_form(z.subspan(0, stride));
    if (parts_ == 1) return n0;
    Gauss64 n1 = norm_form(z.subspan(stride, stride));
    return n0 - gamma_ * n1;
  }

  double magnitude_bound(double zmax) const override {
    double c = base_ == BaseField::Qi ? 2.0 * zmax : zmax;  // |c_l| <= sqrt(2) zmax
    double tr_mag = std::abs(double(tr_.a)) + std::abs(double(tr_.b));
    double nm_mag = std::abs(double(nm_.a)) + std::abs(double(nm_.b));
    double n_mag = c * c * (2.0 + 2.0 * tr_mag + 2.0 * nm_mag);
    double g_mag = std::abs(double(gamma_.a)) + std::abs(double(gamma_.b));
    return parts_ == 1 ? n_mag : n_mag * (1.0 + g_mag);
  }

 private:
  Gauss64 norm_form(std::span<const std::int64_t> z) const {
    Gauss64 c0, c1;
    if (base_ == BaseField::Qi) {
      c0 = {z[0], z[1]};
      c1 = {z[2], z[3]};
    } else {
      c0 = {z[0], 0};
      c1 = {z[1], 0};
    }
    return c0 * c0 + c0 * c1 * tr_ + c1 * c1 * nm_;
  }

  BaseField base_;
  Gauss64 tr_, nm_, gamma_;
  int parts_;
};

/// det(psi(x)) = x for the rank-2 lattice Z[i] in M_1(C).
class IdentityDet final : public ExactDet {
 public:
  Gauss64 eval(std::span<const std::int64_t> z) const override { return {z[0], z[1]}; }
  double magnitude_bound(double zmax) const override { return zmax; }
  int coord_degree() const override { return 1; }
};

FieldElem elem_from_coords(const CyclicFieldData& f, std::span<const std::int64_t> z) {
  FieldElem x(f.zero());
  if (f.base == BaseField::Qi) {
    for (int j = 0; j < f.degree; ++j)
      x[j] = GaussBig(BigInt(z[2 * j]), BigInt(z[2 * j + 1]));
  } else {
    for (int j = 0; j < f.degree; ++j) x[j] = GaussBig(BigInt(z[j]), BigInt(0));
  }
  return x;
}

/// Exact relative norm for diagonal codes of arbitrary degree.
class GenericNfDet final : public ExactDet {
 public:
  explicit GenericNfDet(std::shared_ptr<const CyclicFieldData> field) : field_(std::move(field)) {}

  Gauss64 eval(std::span<const std::int64_t> z) const override {
    GaussBig n = eval_big(z);
    return gauss64_of(n);
  }
  GaussBig eval_big(std::span<const std::int64_t> z) const override {
    return field_->relative_norm(elem_from_coords(*field_, z));
  }
  double magnitude_bound(double zmax) const override {
    double emax = 0.0;
    for (const auto& row : field_->emb)
      for (auto e : row) emax = std::max(emax, std::abs(e));
    return 2.0 * std::pow(2.0 * field_->degree * emax * zmax, field_->degree);
  }
  int coord_degree() const override { return field_->degree; }

 private:
  std::shared_ptr<const CyclicFieldData> field_;
};

/// Exact reduced norm of a general index-n cyclic algebra element via the
/// Leibniz expansion of the left regular representation over E (n <= 4).
class GenericCyclicDet final : public ExactDet {
 public:
  GenericCyclicDet(std::shared_ptr<const CyclicFieldData> field, GaussBig gamma)
      : field_(std::move(field)), gamma_(std::move(gamma)) {}

  Gauss64 eval(std::span<const std::int64_t> z) const override { return gauss64_of(eval_big(z)); }

  GaussBig eval_big(std::span<const std::int64_t> z) const override {
    const CyclicFieldData& f = *field_;
    const int n = f.degree;
    const int stride = (f.base == BaseField::Qi ? 2 : 1) * n;
    std::vector<FieldElem> parts(n);
    for (int l = 0; l < n; ++l)
      parts[l] = elem_from_coords(f, z.subspan(static_cast<std::size_t>(l) * stride, stride));

    // entry(r,c) = gamma^{[r<c]} sigma^c(x_{(r-c) mod n})
    std::vector<std::vector<FieldElem>> entry(n, std::vector<FieldElem>(n));
    for (int c = 0; c < n; ++c)
      for (int r = 0; r < n; ++r) {
        FieldElem e = parts[((r - c) % n + n) % n];
        for (int s = 0; s < c; ++s) e = f.apply_galois(e);
        if (r < c) e = f.scale(gamma_, e);
        entry[r][c] = std::move(e);
      }

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    FieldElem det = f.zero();
    int sign = 1;
    // Leibniz over all permutations (n <= 4: at most 24 terms)
    std::function<void(int)> rec = [&](int depth) {
      if (depth == n) {
        FieldElem prod = f.one();
        for (int r = 0; r < n; ++r) prod = f.mul(prod, entry[r][perm[r]]);
        if (sign < 0) prod = f.scale(GaussBig(-1, 0), prod);
        det = f.add(det, prod);
        return;
      }
      for (int i = depth; i < n; ++i) {
        std::swap(perm[depth], perm[i]);
        if (i != depth) sign = -sign;
        rec(depth + 1);
        std::swap(perm[depth], perm[i]);
        if (i != depth) sign = -sign;
      }
    };
    rec(0);

    for (int t = 1; t < n; ++t)
      if (!det[t].is_zero()) throw InvalidFieldData("reduced norm did not land in the center");
    return det[0];
  }

  double magnitude_bound(double zmax) const override {
    const int n = field_->degree;
    double emax = 1.0;
    for (const auto& row : field_->emb)
      for (auto e : row) emax = std::max(emax, std::abs(e));
    double g = 1.0 + gamma_.abs();
    double entry_mag = 2.0 * n * emax * zmax * g;
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    return fact * std::pow(entry_mag, n);
  }
  int coord_degree() const override { return field_->degree; }

 private:
  std::shared_ptr<const CyclicFieldData> field_;
  GaussBig gamma_;
};

ComplexMatrix psi_diagonal(const CyclicFieldData& f, const FieldElem& x) {
  ComplexMatrix m = ComplexMatrix::Zero(f.degree, f.degree);
  for (int s = 0; s < f.degree; ++s) m(s, s) = f.embed(x, s);
  return m;
}

ComplexMatrix psi_algebra(const CyclicFieldData& f, const GaussBig& gamma,
                          const std::vector<FieldElem>& parts) {
  const int n = f.degree;
  std::complex<double> g = gamma.to_complex();
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::complex<double> v = f.embed(parts[((r - c) % n + n) % n], c);
      if (r < c) v *= g;
      m(r, c) = v;
    }
  return m;
}

}  // namespace

const char* builtin_name(BuiltinCode code) {
  switch (code) {
    case BuiltinCode::Gaussian: return "gaussian";
    case BuiltinCode::NfQiSqrt5: return "nf-sqrt5";
    case BuiltinCode::NfQiSqrt2: return "nf-sqrt2";
    case BuiltinCode::Alamouti: return "alamouti";
    case BuiltinCode::L1: return "l1";
    case BuiltinCode::L2: return "l2";
    case BuiltinCode::GoldenOrder: return "golden-order";
  }
  return "?";
}

std::optional<BuiltinCode> builtin_from_name(const std::string& name) {
  for (BuiltinCode c : all_builtins())
    if (name == builtin_name(c)) return c;
  return std::nullopt;
}

std::vector<BuiltinCode> all_builtins() {
  return {BuiltinCode::Gaussian, BuiltinCode::NfQiSqrt5, BuiltinCode::NfQiSqrt2,
          BuiltinCode::Alamouti, BuiltinCode::L1,        BuiltinCode::L2,
          BuiltinCode::GoldenOrder};
}

MatrixLattice diagonal_nf_lattice(const CyclicFieldData& field, std::string tag) {
  if (field.base != BaseField::Qi)
    throw InvalidFieldData("diagonal codes are built over the base field Q(i)");
  validate_field(field);
  auto shared_field = std::make_shared<CyclicFieldData>(field);
  const int n = field.degree;

  std::vector<ComplexMatrix> basis;
  basis.reserve(2 * n);
  const std::complex<double> iu(0.0, 1.0);
  for (int j = 0; j < n; ++j) {
    FieldElem w(field.zero());
    w[j] = GaussBig(1, 0);
    ComplexMatrix m = psi_diagonal(field, w);
    basis.push_back(m);
    basis.push_back(iu * m);
  }

  std::shared_ptr<const ExactDet> det;
  if (n == 1)
    det = std::make_shared<IdentityDet>();
  else if (n == 2)
    det = std::make_shared<CyclicNormDet>(BaseField::Qi, gauss64_of(field.quad_trace()),
                                          gauss64_of(field.quad_norm()), Gauss64{0, 0}, 1);
  else
    det = std::make_shared<GenericNfDet>(shared_field);

  MatrixLattice lat = build_lattice(std::move(basis), det,
                                    tag.empty() ? "nf-" + field.disc_tag : std::move(tag));
  lat.info.kind = ConstructionKind::NumberField;
  lat.info.degree = n;
  lat.info.quad_a = field.quad_a;
  lat.info.is_order = true;
  lat.field = shared_field;
  return lat;
}

MatrixLattice cyclic_algebra_lattice(const CyclicAlgebraSpec& spec, std::string tag) {
  const CyclicFieldData& f = spec.field;
  if (f.base != spec.center) throw InvalidFieldData("field base ring must match the center");
  if (spec.gamma.is_zero()) throw InvalidFieldData("gamma must be nonzero");
  validate_field(f);
  const int n = f.degree;
  if (n < 2) throw UnsupportedIndex("cyclic algebra needs index >= 2");
  if (n > 4) throw UnsupportedIndex("index > 4 not supported");
  auto shared_field = std::make_shared<CyclicFieldData>(f);

  // Natural order O_E + u O_E + ...: Z-basis per u-slot is the integral
  // basis (times i for complex centers), coordinates stay complex pairs.
  std::vector<ComplexMatrix> basis;
  const std::complex<double> iu(0.0, 1.0);
  for (int l = 0; l < n; ++l) {
    std::vector<FieldElem> parts(n, f.zero());
    for (int j = 0; j < n; ++j) {
      parts[l] = f.zero();
      parts[l][j] = GaussBig(1, 0);
      ComplexMatrix m = psi_algebra(f, spec.gamma, parts);
      basis.push_back(m);
      if (spec.center == BaseField::Qi) basis.push_back(iu * m);
    }
  }

  std::shared_ptr<const ExactDet> det;
  if (n == 2)
    det = std::make_shared<CyclicNormDet>(spec.center, gauss64_of(f.quad_trace()),
                                          gauss64_of(f.quad_norm()), gauss64_of(spec.gamma), 2);
  else
    det = std::make_shared<GenericCyclicDet>(shared_field, spec.gamma);

  std::string name = tag.empty() ? "cyclic" : std::move(tag);
  MatrixLattice lat = build_lattice(std::move(basis), det, name);
  lat.info.kind = spec.center == BaseField::Q ? ConstructionKind::CyclicQ : ConstructionKind::CyclicQi;
  lat.info.degree = n;
  lat.info.quad_a = f.quad_a;
  lat.info.gamma = gauss64_of(spec.gamma);
  lat.info.is_order = true;
  lat.field = shared_field;
  return lat;
}

bool infinite_place_ramified(const CyclicAlgebraSpec& spec) {
  if (spec.center != BaseField::Q || spec.field.degree != 2 || spec.field.quad_a == 0)
    throw UnsupportedIndex("ramification test covers quaternion algebras (a, gamma)_Q");
  if (spec.gamma.b != 0) throw UnsupportedIndex("gamma must be a rational integer for center Q");
  return spec.field.quad_a < 0 && spec.gamma.a < 0;
}

bool infinite_place_ramified(const ConstructionInfo& info) {
  if (info.kind != ConstructionKind::CyclicQ || info.degree != 2 || info.quad_a == 0)
    throw UnsupportedIndex("ramification test covers quaternion algebras (a, gamma)_Q");
  return info.quad_a < 0 && info.gamma.a < 0;
}

MatrixLattice builtin(BuiltinCode code) {
  switch (code) {
    case BuiltinCode::Gaussian:
      return diagonal_nf_lattice(field_qi_trivial(), "gaussian");
    case BuiltinCode::NfQiSqrt5:
      return diagonal_nf_lattice(field_qi_sqrt5(), "nf-sqrt5");
    case BuiltinCode::NfQiSqrt2:
      return diagonal_nf_lattice(field_qi_sqrt2(), "nf-sqrt2");
    case BuiltinCode::Alamouti:
      return cyclic_algebra_lattice({field_gauss_over_q(), GaussBig(-1, 0), BaseField::Q},
                                    "alamouti");
    case BuiltinCode::L1:
      return cyclic_algebra_lattice({field_gauss_over_q(), GaussBig(3, 0), BaseField::Q}, "l1");
    case BuiltinCode::L2:
      return cyclic_algebra_lattice({field_gauss_over_q(), GaussBig(-3, 0), BaseField::Q}, "l2");
    case BuiltinCode::GoldenOrder:
      return cyclic_algebra_lattice({field_qi_sqrt5(), GaussBig(0, 1), BaseField::Qi},
                                    "golden-order");
  }
  throw Error("unknown builtin code");
}

AlgebraElem algebra_mul(const CyclicAlgebraSpec& spec, const AlgebraElem& x, const AlgebraElem& y) {
  const CyclicFieldData& f = spec.field;
  if (f.degree != 2) throw UnsupportedIndex("algebra_mul implemented for index 2");
  // (x0 + u x1)(y0 + u y1) = (x0 y0 + gamma sigma(x1) y1) + u (sigma(x0) y1 + x1 y0)
  AlgebraElem r;
  r.x0 = f.add(f.mul(x.x0, y.x0), f.scale(spec.gamma, f.mul(f.apply_galois(x.x1), y.x1)));
  r.x1 = f.add(f.mul(f.apply_galois(x.x0), y.x1), f.mul(x.x1, y.x0));
  return r;
}

GaussBig algebra_nrd(const CyclicAlgebraSpec& spec, const AlgebraElem& x) {
  const CyclicFieldData& f = spec.field;
  if (f.degree != 2) throw UnsupportedIndex("algebra_nrd implemented for index 2");
  GaussBig n0 = f.relative_norm(x.x0);
  GaussBig n1 = f.relative_norm(x.x1);
  return n0 - spec.gamma * n1;
}

NvdReport nvd_check(const MatrixLattice& lattice, double radius) {
  if (!lattice.has_exact_det()) throw Error("nvd_check needs an exact determinant evaluator");
  internal::check_exact_range(lattice, radius);
  internal::ExactDetFold fold(lattice, 2, {2.0 * radius * radius});
  std::uint64_t count = enumerate_ball(lattice, radius, fold);
  const auto& st = fold.stats();
  if (st.zero_count > 0) {
    std::ostringstream os;
    os << "zero determinant at coefficients (";
    for (std::size_t i = 0; i < st.first_zero_z.size(); ++i)
      os << (i ? "," : "") << st.first_zero_z[i];
    os << "), " << st.zero_count << " zero(s) in total within radius " << radius;
    throw NvdViolation(os.str());
  }
  NvdReport rep;
  rep.points = count;
  rep.min_det2 = count > 0 ? st.min_det2 : 0;
  rep.min_coeffs = st.min_z;
  rep.radius = radius;
  return rep;
}

CyclicAlgebraSpec user_algebra(std::int64_t a, std::int64_t gamma, BaseField center) {
  CyclicAlgebraSpec spec;
  spec.field = center == BaseField::Q && a == -1 ? field_gauss_over_q()
                                                 : field_quadratic(center, a);
  spec.gamma = GaussBig(static_cast<long>(gamma), 0);
  spec.center = center;
  return spec;
}

}  // namespace detsum
