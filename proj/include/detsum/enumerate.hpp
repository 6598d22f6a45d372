#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "detsum/lattice.hpp"

namespace detsum {

struct EnumOptions {
  double node_budget = 2e10;  // cap on the ball-volume point estimate
  int threads = 0;            // 0 = hardware concurrency
};

/// Maximal run of the innermost coordinate: z[0] in [lo, hi] with z[1..k-1]
/// fixed. q2(t) = c0 + c1 t + c2 t^2 equals 2 z^T G z; the coefficients are
/// exact integers when the lattice carries an integral doubled Gram.
struct Run {
  std::int64_t* z = nullptr;  // length k, slot 0 free for the fold to use
  int k = 0;
  std::int64_t lo = 0, hi = 0;
  std::int64_t c0 = 0, c1 = 0, c2 = 0;  // valid when exact
  double f0 = 0, f1 = 0, f2 = 0;        // always valid (double q2 coefficients)
  bool exact = false;

  std::int64_t q2_at(std::int64_t t) const { return c0 + t * (c1 + t * c2); }
  double q2f_at(double t) const { return f0 + t * (f1 + t * f2); }
};

/// Accumulator fed runs in a deterministic order. Workers get fresh clones;
/// partial states are merged back in ascending chunk order, so results do
/// not depend on the thread count.
class RunFold {
 public:
  virtual ~RunFold() = default;
  virtual std::unique_ptr<RunFold> clone_empty() const = 0;
  virtual void run(const Run& r) = 0;
  virtual void merge(RunFold& other) = 0;
};

/// Stream every nonzero lattice point with z^T G z <= M^2 through the fold,
/// grouped into innermost-coordinate runs. Returns |L(M)|. Deterministic
/// visit order: lexicographic on (z_{k-1}, ..., z_0).
std::uint64_t enumerate_ball(const MatrixLattice& lattice, double radius, RunFold& fold,
                             const EnumOptions& opts = {});

/// Convenience point-level visitor (test/diagnostic path).
std::uint64_t enumerate_points(const MatrixLattice& lattice, double radius,
                               const std::function<void(std::span<const std::int64_t>, double q2)>& visit,
                               const EnumOptions& opts = {});

struct ShellCountTable {
  std::vector<double> radii;
  std::vector<std::uint64_t> counts;
};

/// Exact |L(M)| at each radius; one enumeration at max(radii) with interval
/// counting per shell. Radii must be strictly increasing.
ShellCountTable shell_counts(const MatrixLattice& lattice, std::vector<double> radii,
                             const EnumOptions& opts = {});

/// Sum of ||X||_F^s over nonzero points of L(M) (Kahan-compensated, fixed
/// order).
double norm_power_sum(const MatrixLattice& lattice, double s, double radius,
                      const EnumOptions& opts = {});

/// Conservative point-count estimate used for the node budget.
double ball_point_estimate(const MatrixLattice& lattice, double radius);

namespace kahan {
struct Sum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  void merge(const Sum& o) {
    add(o.s);
    add(-o.c);
  }
};
}  // namespace kahan

}  // namespace detsum
