#include "detsum/field.hpp"

#include <cmath>
#include <random>

#include "detsum/errors.hpp"

namespace detsum {

FieldElem CyclicFieldData::one() const {
  FieldElem e(degree);
  e[0] = GaussBig(1, 0);
  return e;
}

FieldElem CyclicFieldData::add(const FieldElem& x, const FieldElem& y) const {
  FieldElem r(degree);
  for (int i = 0; i < degree; ++i) r[i] = x[i] + y[i];
  return r;
}

FieldElem CyclicFieldData::sub(const FieldElem& x, const FieldElem& y) const {
  FieldElem r(degree);
  for (int i = 0; i < degree; ++i) r[i] = x[i] - y[i];
  return r;
}

FieldElem CyclicFieldData::mul(const FieldElem& x, const FieldElem& y) const {
  FieldElem r(degree);
  for (int i = 0; i < degree; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < degree; ++j) {
      if (y[j].is_zero()) continue;
      GaussBig c = x[i] * y[j];
      const FieldElem& basis_prod = mult[i][j];
      for (int t = 0; t < degree; ++t)
        if (!basis_prod[t].is_zero()) r[t] += c * basis_prod[t];
    }
  }
  return r;
}

FieldElem CyclicFieldData::scale(const GaussBig& c, const FieldElem& x) const {
  FieldElem r(degree);
  for (int i = 0; i < degree; ++i) r[i] = c * x[i];
  return r;
}

FieldElem CyclicFieldData::apply_galois(const FieldElem& x) const {
  FieldElem r(degree);
  for (int i = 0; i < degree; ++i) {
    if (x[i].is_zero()) continue;
    for (int t = 0; t < degree; ++t)
      if (!galois[i][t].is_zero()) r[t] += x[i] * galois[i][t];
  }
  return r;
}

std::complex<double> CyclicFieldData::embed(const FieldElem& x, int s) const {
  std::complex<double> v = 0.0;
  for (int j = 0; j < degree; ++j) v += x[j].to_complex() * emb[s][j];
  return v;
}

GaussBig CyclicFieldData::relative_norm(const FieldElem& x) const {
  FieldElem prod = x;
  FieldElem pow = x;
  for (int s = 1; s < degree; ++s) {
    pow = apply_galois(pow);
    prod = mul(prod, pow);
  }
  for (int t = 1; t < degree; ++t)
    if (!prod[t].is_zero()) throw InvalidFieldData("relative norm not in the base field");
  return prod[0];
}

GaussBig CyclicFieldData::quad_trace() const {
  if (degree != 2) throw UnsupportedIndex("quad_trace needs degree 2");
  // w1^2 = mult[1][1] = p0 + p1 w1, so w1 satisfies X^2 - p1 X - p0.
  return mult[1][1][1];
}

GaussBig CyclicFieldData::quad_norm() const {
  if (degree != 2) throw UnsupportedIndex("quad_norm needs degree 2");
  return -mult[1][1][0];
}

void validate_field(const CyclicFieldData& field, int random_trials) {
  const int n = field.degree;
  if (n < 1) throw InvalidFieldData("degree must be positive");
  if (static_cast<int>(field.mult.size()) != n || static_cast<int>(field.galois.size()) != n ||
      static_cast<int>(field.emb.size()) != n)
    throw InvalidFieldData("table dimensions do not match the degree");

  // sigma^n = id on every basis vector.
  for (int i = 0; i < n; ++i) {
    FieldElem e(field.zero());
    e[i] = GaussBig(1, 0);
    FieldElem s = e;
    for (int t = 0; t < n; ++t) s = field.apply_galois(s);
    for (int j = 0; j < n; ++j)
      if (!(s[j] == e[j])) throw InvalidFieldData("galois action is not of order dividing n");
  }

  std::mt19937_64 rng(0x5eed5u);
  auto rand_elem = [&] {
    FieldElem e(field.zero());
    for (int j = 0; j < n; ++j) {
      e[j].a = BigInt(static_cast<long>(rng() % 21) - 10);
      e[j].b = field.base == BaseField::Qi ? BigInt(static_cast<long>(rng() % 21) - 10) : BigInt(0);
    }
    return e;
  };

  for (int t = 0; t < random_trials; ++t) {
    FieldElem x = rand_elem(), y = rand_elem(), z = rand_elem();
    FieldElem xy = field.mul(x, y);
    FieldElem yx = field.mul(y, x);
    for (int j = 0; j < n; ++j)
      if (!(xy[j] == yx[j])) throw InvalidFieldData("multiplication table is not commutative");
    FieldElem a = field.mul(xy, z);
    FieldElem b = field.mul(x, field.mul(y, z));
    for (int j = 0; j < n; ++j)
      if (!(a[j] == b[j])) throw InvalidFieldData("multiplication table is not associative");

    for (int s = 0; s < n; ++s) {
      std::complex<double> lhs = field.embed(xy, s);
      std::complex<double> rhs = field.embed(x, s) * field.embed(y, s);
      double scale = std::max(1.0, std::abs(rhs));
      if (std::abs(lhs - rhs) > 1e-10 * scale)
        throw InvalidFieldData("embeddings do not diagonalize multiplication");
    }
  }
}

CyclicFieldData field_qi_trivial() {
  CyclicFieldData f;
  f.degree = 1;
  f.base = BaseField::Qi;
  f.mult = {{{GaussBig(1, 0)}}};
  f.galois = {{GaussBig(1, 0)}};
  f.emb = {{{1.0, 0.0}}};
  f.disc_tag = "Q(i)/Q(i)";
  return f;
}

CyclicFieldData field_quadratic(BaseField base, std::int64_t a) {
  if (a == 0 || a == 1) throw InvalidFieldData("quadratic extension needs a != 0, 1");
  CyclicFieldData f;
  f.degree = 2;
  f.base = base;
  f.quad_a = a;
  GaussBig zero(0, 0), one(1, 0);
  // basis {1, d} with d^2 = a, sigma(d) = -d
  f.mult = {{{one, zero}, {zero, one}}, {{zero, one}, {GaussBig(static_cast<long>(a), 0), zero}}};
  f.galois = {{one, zero}, {zero, GaussBig(-1, 0)}};
  std::complex<double> root = a >= 0 ? std::complex<double>(std::sqrt(double(a)), 0.0)
                                     : std::complex<double>(0.0, std::sqrt(double(-a)));
  f.emb = {{{1.0, 0.0}, root}, {{1.0, 0.0}, -root}};
  f.disc_tag = (base == BaseField::Qi ? "Q(i,sqrt(" : "Q(sqrt(") + std::to_string(a) + "))";
  return f;
}

CyclicFieldData field_qi_sqrt5() {
  // basis {1, phi} with phi^2 = phi + 1, sigma(phi) = 1 - phi
  CyclicFieldData f;
  f.degree = 2;
  f.base = BaseField::Qi;
  f.quad_a = 5;
  GaussBig zero(0, 0), one(1, 0);
  f.mult = {{{one, zero}, {zero, one}}, {{zero, one}, {one, one}}};
  f.galois = {{one, zero}, {one, GaussBig(-1, 0)}};
  double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  f.emb = {{{1.0, 0.0}, {phi, 0.0}}, {{1.0, 0.0}, {1.0 - phi, 0.0}}};
  f.disc_tag = "Q(i,sqrt5)/Q(i)";
  return f;
}

CyclicFieldData field_qi_sqrt2() {
  CyclicFieldData f = field_quadratic(BaseField::Qi, 2);
  f.disc_tag = "Q(i,sqrt2)/Q(i)";
  return f;
}

CyclicFieldData field_gauss_over_q() {
  CyclicFieldData f = field_quadratic(BaseField::Q, -1);
  f.disc_tag = "Q(i)/Q";
  return f;
}

}  // namespace detsum
