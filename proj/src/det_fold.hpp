#pragma once

// Internal: streaming fold computing per-shell point counts, inverse
// determinant sums, unit counts and the minimum |det|^2 in one enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "detsum/enumerate.hpp"
#include "detsum/errors.hpp"
#include "detsum/lattice.hpp"

namespace detsum::internal {

struct DetStats {
  std::vector<std::uint64_t> count;  // per bucket (not cumulative)
  std::vector<kahan::Sum> sum;
  std::vector<std::uint64_t> units;
  std::int64_t min_det2 = std::numeric_limits<std::int64_t>::max();
  std::vector<std::int64_t> min_z;
  double min_det2_f = std::numeric_limits<double>::infinity();  // float path
  std::uint64_t zero_count = 0;
  std::vector<std::int64_t> first_zero_z;
};

/// Exact-determinant fold. Terms 1/|det|^m are exp(-(m/2) ln |det|^2) with
/// |det|^2 an exact int64; units are the exact predicate |det|^2 == 1.
class ExactDetFold final : public RunFold {
 public:
  ExactDetFold(const MatrixLattice& lat, int m, std::vector<double> bucket_bound2)
      : lat_(lat), det_(lat.exact_det.get()), m_(m), bound2_(std::move(bucket_bound2)) {
    if (!det_) throw Error("exact determinant evaluator required");
    st_.count.assign(bound2_.size(), 0);
    st_.sum.assign(bound2_.size(), {});
    st_.units.assign(bound2_.size(), 0);
    quad_ = det_->coord_degree() <= 2;
  }

  std::unique_ptr<RunFold> clone_empty() const override {
    return std::make_unique<ExactDetFold>(lat_, m_, bound2_);
  }

  void run(const Run& r) override {
    std::int64_t are = 0, bre = 0, cre = 0, aim = 0, bim = 0, cim = 0;
    if (quad_) {
      std::span<const std::int64_t> z(r.z, static_cast<std::size_t>(r.k));
      r.z[0] = 0;
      Gauss64 d0 = det_->eval(z);
      r.z[0] = 1;
      Gauss64 d1 = det_->eval(z);
      r.z[0] = 2;
      Gauss64 d2 = det_->eval(z);
      are = d0.a;
      cre = (d2.a - 2 * d1.a + d0.a) / 2;
      bre = d1.a - are - cre;
      aim = d0.b;
      cim = (d2.b - 2 * d1.b + d0.b) / 2;
      bim = d1.b - aim - cim;
    }
    for (std::int64_t t = r.lo; t <= r.hi; ++t) {
      std::int64_t re, im;
      if (quad_) {
        re = are + t * (bre + t * cre);
        im = aim + t * (bim + t * cim);
      } else {
        r.z[0] = t;
        Gauss64 d = det_->eval(std::span<const std::int64_t>(r.z, static_cast<std::size_t>(r.k)));
        re = d.a;
        im = d.b;
      }
      std::int64_t det2 = re * re + im * im;
      double q2 = static_cast<double>(r.q2_at(t));
      std::size_t b = bucket(q2);
      ++st_.count[b];
      if (det2 == 0) {
        if (st_.zero_count == 0) st_.first_zero_z = snapshot(r, t);
        ++st_.zero_count;
        continue;
      }
      if (det2 < st_.min_det2) {
        st_.min_det2 = det2;
        st_.min_z = snapshot(r, t);
      }
      double term = det2 == 1 ? 1.0 : std::exp(-0.5 * m_ * std::log(static_cast<double>(det2)));
      st_.sum[b].add(term);
      if (det2 == 1) ++st_.units[b];
    }
    r.z[0] = 0;
  }

  void merge(RunFold& other) override { merge_stats(st_, static_cast<ExactDetFold&>(other).st_); }

  const DetStats& stats() const { return st_; }

  static void merge_stats(DetStats& a, const DetStats& b) {
    for (std::size_t i = 0; i < a.count.size(); ++i) {
      a.count[i] += b.count[i];
      a.sum[i].merge(b.sum[i]);
      a.units[i] += b.units[i];
    }
    if (b.min_det2 < a.min_det2) {
      a.min_det2 = b.min_det2;
      a.min_z = b.min_z;
    }
    if (b.min_det2_f < a.min_det2_f) a.min_det2_f = b.min_det2_f;
    if (a.zero_count == 0 && b.zero_count > 0) a.first_zero_z = b.first_zero_z;
    a.zero_count += b.zero_count;
  }

 private:
  std::size_t bucket(double q2) const {
    auto it = std::lower_bound(bound2_.begin(), bound2_.end(), q2);
    std::size_t b = static_cast<std::size_t>(it - bound2_.begin());
    return std::min(b, bound2_.size() - 1);
  }
  static std::vector<std::int64_t> snapshot(const Run& r, std::int64_t t) {
    std::vector<std::int64_t> z(r.z, r.z + r.k);
    z[0] = t;
    return z;
  }

  const MatrixLattice& lat_;
  const ExactDet* det_;
  int m_;
  std::vector<double> bound2_;
  bool quad_ = true;
  DetStats st_;
};

/// Float fallback for raw bases: |det| from the matrix itself (quadratic
/// interpolation of det along the run for n = 2, LU otherwise). No unit
/// counting.
class FloatDetFold final : public RunFold {
 public:
  FloatDetFold(const MatrixLattice& lat, int m, std::vector<double> bucket_bound2)
      : lat_(lat), m_(m), bound2_(std::move(bucket_bound2)) {
    st_.count.assign(bound2_.size(), 0);
    st_.sum.assign(bound2_.size(), {});
    st_.units.assign(bound2_.size(), 0);
  }

  std::unique_ptr<RunFold> clone_empty() const override {
    return std::make_unique<FloatDetFold>(lat_, m_, bound2_);
  }

  void run(const Run& r) override {
    const bool quad = lat_.n == 2;
    std::complex<double> a, b, c;
    if (quad) {
      auto det2x2 = [](const ComplexMatrix& x) {
        return x(0, 0) * x(1, 1) - x(0, 1) * x(1, 0);
      };
      r.z[0] = 0;
      std::complex<double> d0 = det2x2(lat_.matrix_of({r.z, static_cast<std::size_t>(r.k)}));
      r.z[0] = 1;
      std::complex<double> d1 = det2x2(lat_.matrix_of({r.z, static_cast<std::size_t>(r.k)}));
      r.z[0] = 2;
      std::complex<double> d2 = det2x2(lat_.matrix_of({r.z, static_cast<std::size_t>(r.k)}));
      a = d0;
      c = 0.5 * (d2 - 2.0 * d1 + d0);
      b = d1 - a - c;
    }
    for (std::int64_t t = r.lo; t <= r.hi; ++t) {
      double det_abs;
      if (quad) {
        std::complex<double> d = a + static_cast<double>(t) * (b + static_cast<double>(t) * c);
        det_abs = std::abs(d);
      } else {
        r.z[0] = t;
        det_abs = det_abs_float(lat_.matrix_of({r.z, static_cast<std::size_t>(r.k)}));
      }
      double q2 = r.exact ? static_cast<double>(r.q2_at(t)) : r.q2f_at(static_cast<double>(t));
      std::size_t b2 = bucket(q2);
      ++st_.count[b2];
      if (det_abs < 1e-300) {
        if (st_.zero_count == 0) {
          st_.first_zero_z.assign(r.z, r.z + r.k);
          st_.first_zero_z[0] = t;
        }
        ++st_.zero_count;
        continue;
      }
      if (det_abs * det_abs < st_.min_det2_f) st_.min_det2_f = det_abs * det_abs;
      st_.sum[b2].add(std::exp(-static_cast<double>(m_) * std::log(det_abs)));
    }
    r.z[0] = 0;
  }

  void merge(RunFold& other) override {
    ExactDetFold::merge_stats(st_, static_cast<FloatDetFold&>(other).st_);
  }

  const DetStats& stats() const { return st_; }

 private:
  std::size_t bucket(double q2) const {
    auto it = std::lower_bound(bound2_.begin(), bound2_.end(), q2);
    std::size_t b = static_cast<std::size_t>(it - bound2_.begin());
    return std::min(b, bound2_.size() - 1);
  }

  const MatrixLattice& lat_;
  int m_;
  std::vector<double> bound2_;
  DetStats st_;
};

/// int64 overflow guard for the exact inner loop.
void check_exact_range(const MatrixLattice& lat, double radius);

}  // namespace detsum::internal
