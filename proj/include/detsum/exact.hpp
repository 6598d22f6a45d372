#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <string>

#include "detsum/errors.hpp"

namespace detsum {

using BigInt = boost::multiprecision::cpp_int;

/// Element of Z or Z[i], kept exact at arbitrary precision. For base ring Z
/// the imaginary part stays 0.
struct GaussBig {
  BigInt a;  // real part
  BigInt b;  // imaginary part

  GaussBig() = default;
  GaussBig(BigInt re) : a(std::move(re)) {}
  GaussBig(BigInt re, BigInt im) : a(std::move(re)), b(std::move(im)) {}
  GaussBig(long re, long im = 0) : a(re), b(im) {}

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_real() const { return b == 0; }

  GaussBig conj() const { return {a, -b}; }
  BigInt norm2() const { return a * a + b * b; }

  friend GaussBig operator+(const GaussBig& x, const GaussBig& y) { return {x.a + y.a, x.b + y.b}; }
  friend GaussBig operator-(const GaussBig& x, const GaussBig& y) { return {x.a - y.a, x.b - y.b}; }
  friend GaussBig operator-(const GaussBig& x) { return {-x.a, -x.b}; }
  friend GaussBig operator*(const GaussBig& x, const GaussBig& y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(const GaussBig& x, const GaussBig& y) { return x.a == y.a && x.b == y.b; }

  GaussBig& operator+=(const GaussBig& y) { return *this = *this + y; }
  GaussBig& operator*=(const GaussBig& y) { return *this = *this * y; }

  std::complex<double> to_complex() const {
    return {static_cast<double>(a), static_cast<double>(b)};
  }
  double abs() const { return std::abs(to_complex()); }

  std::string str() const {
    return a.str() + (b >= 0 ? "+" : "") + b.str() + "i";
  }
};

/// int64 Gaussian integer for the hot enumeration path.
struct Gauss64 {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend Gauss64 operator+(Gauss64 x, Gauss64 y) { return {x.a + y.a, x.b + y.b}; }
  friend Gauss64 operator-(Gauss64 x, Gauss64 y) { return {x.a - y.a, x.b - y.b}; }
  friend Gauss64 operator*(Gauss64 x, Gauss64 y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(Gauss64 x, Gauss64 y) { return x.a == y.a && x.b == y.b; }
};

}  // namespace detsum
