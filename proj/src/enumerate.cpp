#include "detsum/enumerate.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "detsum/errors.hpp"

namespace detsum {

namespace {

double ball_volume(int k, double radius) {
  // pi^{k/2} M^k / Gamma(k/2 + 1)
  double log_vol = 0.5 * k * std::log(M_PI) + k * std::log(radius) - std::lgamma(0.5 * k + 1.0);
  return std::exp(log_vol);
}

struct Workspace {
  std::vector<std::int64_t> z;
  // sigma(l, i) = sum_{j >= l} R(i, j) z_j, maintained on descent
  Eigen::MatrixXd sigma;
  explicit Workspace(int k) : z(k, 0), sigma(Eigen::MatrixXd::Zero(k + 1, k)) {}
};

class Enumerator {
 public:
  Enumerator(const MatrixLattice& lat, double radius, const EnumOptions& opts)
      : lat_(lat), k_(lat.k) {
    double est = ball_point_estimate(lat, radius);
    if (est > opts.node_budget)
      throw RadiusTooLarge("ball holds ~" + std::to_string(est) + " points, budget " +
                           std::to_string(opts.node_budget));
    Eigen::LLT<Eigen::MatrixXd> llt(lat.gram);
    if (llt.info() != Eigen::Success)
      throw DependentBasis("gram matrix is not positive definite");
    r_ = llt.matrixL().transpose();
    bound_f_ = radius * radius * (1.0 + 1e-9);
    bound2_ = 2.0 * radius * radius;
    exact_ = lat.gram2_int.has_value();
    if (exact_) {
      // int64 shell tests need q2 to stay exactly representable in double
      double q2max = 2.0 * bound_f_ + 16.0;
      if (q2max > 9.0e15) exact_ = false;
    }
  }

  std::uint64_t enumerate(RunFold& fold, const EnumOptions& opts) {
    if (k_ == 1) {
      Workspace ws(k_);
      std::uint64_t count = 0;
      descend(ws, 0, 0.0, true, fold, count);
      return count;
    }

    // Partition on the outermost coordinate; chunk results are merged in
    // ascending order so thread count never changes the outcome.
    const int top = k_ - 1;
    double rii = r_(top, top);
    double s = std::sqrt(bound_f_);
    std::int64_t lo = static_cast<std::int64_t>(std::ceil(-s / rii));
    std::int64_t hi = static_cast<std::int64_t>(std::floor(s / rii));
    auto term = [&](std::int64_t t) {
      double v = rii * static_cast<double>(t);
      return v * v;
    };
    while (term(lo - 1) <= bound_f_) --lo;
    while (term(hi + 1) <= bound_f_) ++hi;
    while (lo <= hi && term(lo) > bound_f_) ++lo;
    while (hi >= lo && term(hi) > bound_f_) --hi;
    if (lo > hi) return 0;

    const std::size_t chunks = static_cast<std::size_t>(hi - lo + 1);
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t want = opts.threads > 0 ? static_cast<std::size_t>(opts.threads)
                                        : (hw ? hw : 1);
    std::size_t nthreads = std::min(want, chunks);

    std::vector<std::unique_ptr<RunFold>> states(chunks);
    std::vector<std::uint64_t> counts(chunks, 0);

    auto work_chunk = [&](std::size_t c) {
      Workspace ws(k_);
      std::int64_t zv = lo + static_cast<std::int64_t>(c);
      ws.z[top] = zv;
      double u = 0.0;  // no coordinates above the top level
      double tv = (rii * static_cast<double>(zv) + u);
      tv *= tv;
      for (int ii = 0; ii < top; ++ii) ws.sigma(top, ii) = r_(ii, top) * static_cast<double>(zv);
      states[c] = fold.clone_empty();
      descend(ws, top - 1, tv, zv == 0, *states[c], counts[c]);
    };

    if (nthreads <= 1) {
      for (std::size_t c = 0; c < chunks; ++c) work_chunk(c);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      pool.reserve(nthreads);
      for (std::size_t t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
          for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            work_chunk(c);
          }
        });
      for (auto& th : pool) th.join();
    }

    std::uint64_t total = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
      total += counts[c];
      fold.merge(*states[c]);
    }
    return total;
  }

 private:
  void descend(Workspace& ws, int level, double partial, bool prefix_zero, RunFold& fold,
               std::uint64_t& count) {
    const double rem = bound_f_ - partial;
    if (rem < 0.0) return;
    const double rii = r_(level, level);
    const double u = ws.sigma(level + 1, level);
    const double s = std::sqrt(rem);
    auto term = [&](std::int64_t t) {
      double v = rii * static_cast<double>(t) + u;
      return v * v;
    };
    std::int64_t lo = static_cast<std::int64_t>(std::ceil((-s - u) / rii));
    std::int64_t hi = static_cast<std::int64_t>(std::floor((s - u) / rii));
    while (term(lo - 1) <= rem) --lo;
    while (term(hi + 1) <= rem) ++hi;
    while (lo <= hi && term(lo) > rem) ++lo;
    while (hi >= lo && term(hi) > rem) --hi;
    if (lo > hi) return;

    if (level == 0) {
      emit_run(ws, lo, hi, prefix_zero, fold, count);
      return;
    }

    for (std::int64_t t = lo; t <= hi; ++t) {
      ws.z[level] = t;
      for (int ii = 0; ii < level; ++ii)
        ws.sigma(level, ii) = ws.sigma(level + 1, ii) + r_(ii, level) * static_cast<double>(t);
      descend(ws, level - 1, partial + term(t), prefix_zero && t == 0, fold, count);
    }
    ws.z[level] = 0;
  }

  void emit_run(Workspace& ws, std::int64_t lo, std::int64_t hi, bool prefix_zero, RunFold& fold,
                std::uint64_t& count) {
    Run run;
    run.z = ws.z.data();
    run.k = k_;
    run.exact = exact_;

    if (exact_) {
      const auto& g2 = *lat_.gram2_int;
      std::int64_t c0 = 0, c1 = 0;
      for (int i = 1; i < k_; ++i) {
        if (ws.z[i] == 0) continue;
        c1 += g2(0, i) * ws.z[i];
        std::int64_t row = 0;
        for (int j = 1; j < k_; ++j) row += g2(i, j) * ws.z[j];
        c0 += ws.z[i] * row;
      }
      run.c0 = c0;
      run.c1 = 2 * c1;
      run.c2 = g2(0, 0);
      // exact shell boundary: emitted set is {z != 0 : z^T G z <= M^2}
      while (lo <= hi && static_cast<double>(run.q2_at(lo)) > bound2_) ++lo;
      while (hi >= lo && static_cast<double>(run.q2_at(hi)) > bound2_) --hi;
      while (static_cast<double>(run.q2_at(lo - 1)) <= bound2_) --lo;
      while (static_cast<double>(run.q2_at(hi + 1)) <= bound2_) ++hi;
      run.f0 = static_cast<double>(run.c0);
      run.f1 = static_cast<double>(run.c1);
      run.f2 = static_cast<double>(run.c2);
    } else {
      double f0 = 0.0, f1 = 0.0;
      for (int i = 1; i < k_; ++i) {
        if (ws.z[i] == 0) continue;
        f1 += lat_.gram(0, i) * static_cast<double>(ws.z[i]);
        double row = 0.0;
        for (int j = 1; j < k_; ++j) row += lat_.gram(i, j) * static_cast<double>(ws.z[j]);
        f0 += static_cast<double>(ws.z[i]) * row;
      }
      run.f0 = 2.0 * f0;
      run.f1 = 4.0 * f1;
      run.f2 = 2.0 * lat_.gram(0, 0);
      while (lo <= hi && run.q2f_at(static_cast<double>(lo)) > bound2_ * (1.0 + 1e-9)) ++lo;
      while (hi >= lo && run.q2f_at(static_cast<double>(hi)) > bound2_ * (1.0 + 1e-9)) --hi;
    }
    if (lo > hi) return;

    if (prefix_zero && lo <= 0 && hi >= 0) {
      if (lo <= -1) {
        run.lo = lo;
        run.hi = -1;
        count += static_cast<std::uint64_t>(-1 - lo + 1);
        fold.run(run);
      }
      if (hi >= 1) {
        run.lo = 1;
        run.hi = hi;
        count += static_cast<std::uint64_t>(hi - 1 + 1);
        fold.run(run);
      }
      return;
    }
    run.lo = lo;
    run.hi = hi;
    count += static_cast<std::uint64_t>(hi - lo + 1);
    fold.run(run);
  }

  const MatrixLattice& lat_;
  int k_;
  Eigen::MatrixXd r_;
  double bound_f_ = 0.0;
  double bound2_ = 0.0;
  bool exact_ = false;
};

class PointAdapter final : public RunFold {
 public:
  explicit PointAdapter(
      const std::function<void(std::span<const std::int64_t>, double)>& visit)
      : visit_(visit) {}
  std::unique_ptr<RunFold> clone_empty() const override {
    return std::make_unique<PointAdapter>(visit_);
  }
  void run(const Run& r) override {
    for (std::int64_t t = r.lo; t <= r.hi; ++t) {
      r.z[0] = t;
      double q2 = r.exact ? static_cast<double>(r.q2_at(t)) : r.q2f_at(static_cast<double>(t));
      visit_(std::span<const std::int64_t>(r.z, static_cast<std::size_t>(r.k)), q2);
    }
    r.z[0] = 0;
  }
  void merge(RunFold&) override {}

 private:
  const std::function<void(std::span<const std::int64_t>, double)>& visit_;
};

class BucketCountFold final : public RunFold {
 public:
  explicit BucketCountFold(std::vector<double> bound2) : bound2_(std::move(bound2)) {
    counts_.assign(bound2_.size(), 0);
  }
  std::unique_ptr<RunFold> clone_empty() const override {
    return std::make_unique<BucketCountFold>(bound2_);
  }
  void run(const Run& r) override {
    for (std::size_t b = 0; b < bound2_.size(); ++b)
      counts_[b] += interval_count(r, bound2_[b]);
  }
  void merge(RunFold& other) override {
    auto& o = static_cast<BucketCountFold&>(other);
    for (std::size_t b = 0; b < counts_.size(); ++b) counts_[b] += o.counts_[b];
  }
  const std::vector<std::uint64_t>& counts() const { return counts_; }

  /// # of t in [r.lo, r.hi] with q2(t) <= bound (q2 convex).
  static std::uint64_t interval_count(const Run& r, double bound) {
    double a = r.f2, b = r.f1, c = r.f0 - bound;
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return 0;
    double sq = std::sqrt(disc);
    std::int64_t tl = static_cast<std::int64_t>(std::ceil((-b - sq) / (2.0 * a)));
    std::int64_t th = static_cast<std::int64_t>(std::floor((-b + sq) / (2.0 * a)));
    if (r.exact) {
      while (tl <= th && static_cast<double>(r.q2_at(tl)) > bound) ++tl;
      while (th >= tl && static_cast<double>(r.q2_at(th)) > bound) --th;
      while (static_cast<double>(r.q2_at(tl - 1)) <= bound) --tl;
      while (static_cast<double>(r.q2_at(th + 1)) <= bound) ++th;
    }
    tl = std::max(tl, r.lo);
    th = std::min(th, r.hi);
    return th >= tl ? static_cast<std::uint64_t>(th - tl + 1) : 0;
  }

 private:
  std::vector<double> bound2_;
  std::vector<std::uint64_t> counts_;
};

class NormPowerFold final : public RunFold {
 public:
  explicit NormPowerFold(double s) : s_(s) {}
  std::unique_ptr<RunFold> clone_empty() const override {
    return std::make_unique<NormPowerFold>(s_);
  }
  void run(const Run& r) override {
    // ||X||^s = (q2/2)^{s/2}
    for (std::int64_t t = r.lo; t <= r.hi; ++t) {
      double q2 = r.exact ? static_cast<double>(r.q2_at(t)) : r.q2f_at(static_cast<double>(t));
      acc_.add(std::pow(0.5 * q2, 0.5 * s_));
    }
  }
  void merge(RunFold& other) override { acc_.merge(static_cast<NormPowerFold&>(other).acc_); }
  double value() const { return acc_.s; }

 private:
  double s_;
  kahan::Sum acc_;
};

}  // namespace

double ball_point_estimate(const MatrixLattice& lattice, double radius) {
  return ball_volume(lattice.k, radius) / lattice.covolume;
}

std::uint64_t enumerate_ball(const MatrixLattice& lattice, double radius, RunFold& fold,
                             const EnumOptions& opts) {
  if (!(radius > 0.0)) throw Error("radius must be positive");
  Enumerator e(lattice, radius, opts);
  return e.enumerate(fold, opts);
}

std::uint64_t enumerate_points(
    const MatrixLattice& lattice, double radius,
    const std::function<void(std::span<const std::int64_t>, double)>& visit,
    const EnumOptions& opts) {
  PointAdapter fold(visit);
  EnumOptions serial = opts;
  serial.threads = 1;  // callbacks observe points in order
  return enumerate_ball(lattice, radius, fold, serial);
}

ShellCountTable shell_counts(const MatrixLattice& lattice, std::vector<double> radii,
                             const EnumOptions& opts) {
  if (radii.empty()) throw Error("empty radius list");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw Error("radii must be strictly increasing");
  std::vector<double> bound2(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) bound2[i] = 2.0 * radii[i] * radii[i];
  BucketCountFold fold(bound2);
  enumerate_ball(lattice, radii.back(), fold, opts);
  ShellCountTable table;
  table.radii = std::move(radii);
  table.counts = fold.counts();
  return table;
}

double norm_power_sum(const MatrixLattice& lattice, double s, double radius,
                      const EnumOptions& opts) {
  NormPowerFold fold(s);
  enumerate_ball(lattice, radius, fold, opts);
  return fold.value();
}

}  // namespace detsum
