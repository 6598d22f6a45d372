#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "detsum/exact.hpp"

namespace detsum {

enum class BaseField { Q, Qi };

/// Element of the extension field in integral-basis coordinates over the
/// base ring (Z or Z[i]).
using FieldElem = std::vector<GaussBig>;

/// Exact arithmetic tables for a cyclic extension E/F of degree n with
/// Galois group <sigma>. Basis w_0 = 1, w_1, ..., w_{n-1} of the order used
/// for coding (Z[i][w] for F = Q(i)).
struct CyclicFieldData {
  int degree = 0;
  BaseField base = BaseField::Qi;
  /// mult[i][j] = coordinates of w_i * w_j.
  std::vector<std::vector<FieldElem>> mult;
  /// galois[i] = coordinates of sigma(w_i).
  std::vector<FieldElem> galois;
  /// emb[s][j] = sigma^s(w_j) as a complex double.
  std::vector<std::vector<std::complex<double>>> emb;
  std::string disc_tag;
  /// E = F(sqrt(quad_a)) for the quadratic constructors, 0 otherwise.
  std::int64_t quad_a = 0;

  FieldElem zero() const { return FieldElem(degree); }
  FieldElem one() const;
  FieldElem add(const FieldElem& x, const FieldElem& y) const;
  FieldElem sub(const FieldElem& x, const FieldElem& y) const;
  FieldElem mul(const FieldElem& x, const FieldElem& y) const;
  FieldElem scale(const GaussBig& c, const FieldElem& x) const;
  FieldElem apply_galois(const FieldElem& x) const;
  std::complex<double> embed(const FieldElem& x, int s) const;

  /// Relative norm N_{E/F}(x) = prod_s sigma^s(x); throws if the product
  /// does not land in F.
  GaussBig relative_norm(const FieldElem& x) const;

  /// For degree 2: w_1 satisfies w_1^2 = trace*w_1 - norm with
  /// trace = w_1 + sigma(w_1), norm = w_1 * sigma(w_1), both in O_F.
  GaussBig quad_trace() const;
  GaussBig quad_norm() const;
};

/// Invariant checks from the data sheet: commutative/associative
/// multiplication on random triples, sigma^n = id, embeddings multiplicative.
/// Throws InvalidFieldData on the first failure.
void validate_field(const CyclicFieldData& field, int random_trials = 100);

// Built-in tables.
CyclicFieldData field_qi_trivial();               // Q(i)/Q(i), degree 1
CyclicFieldData field_qi_sqrt5();                 // Q(i,sqrt5)/Q(i), basis {1, phi}
CyclicFieldData field_qi_sqrt2();                 // Q(i,sqrt2)/Q(i), basis {1, sqrt2}
CyclicFieldData field_gauss_over_q();             // Q(i)/Q, basis {1, i}
CyclicFieldData field_quadratic(BaseField base, std::int64_t a);  // F(sqrt a)/F

}  // namespace detsum
