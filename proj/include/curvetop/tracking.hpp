#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "curvetop/bivariate.hpp"
#include "curvetop/cluster.hpp"
#include "curvetop/errors.hpp"
#include "curvetop/path.hpp"
#include "curvetop/rootfind.hpp"

namespace curvetop {

/// Tracking configuration. Keys follow the CLI config file:
/// step.initial, step.min, corrector.tol, separation.floor, cluster.ratio.
struct TrackingConfig {
  double step_initial = 0.0625;   // also the step cap
  double step_min = 1e-14;        // relative to the piece parameter
  double corrector_tol = 1e-12;   // relative residual
  double separation_floor = 1e-9;
  double cluster_ratio = 10.0;
  double tol = 1e-8;              // root certification / approach stop distance
  bool extended_precision = true;  // retry a StepUnderflow in long double
};

/// Floating evaluator for f, df/dy, df/dx, plus a magnitude polynomial for
/// relative residual tests. Built once per curve. R = double normally;
/// long double backs the StepUnderflow fallback.
template <class R>
class BasicCurveEvaluator {
 public:
  using C = std::complex<R>;

  explicit BasicCurveEvaluator(const BivariatePolynomial& f) {
    dy_ = std::max(0, f.deg_y());
    auto pack = [](const BivariatePolynomial& p, int rows) {
      std::vector<std::vector<C>> grid(static_cast<std::size_t>(rows) + 1);
      for (auto& [k, c] : p.terms()) {
        auto& row = grid[static_cast<std::size_t>(k.second)];
        if (static_cast<int>(row.size()) <= k.first)
          row.resize(static_cast<std::size_t>(k.first) + 1);
        // exact rational -> R conversion
        row[static_cast<std::size_t>(k.first)] =
            C(c.re.template convert_to<R>(), c.im.template convert_to<R>());
      }
      return grid;
    };
    cf_ = pack(f, dy_);
    cfy_ = pack(f.derivative_y(), std::max(0, dy_ - 1));
    cfx_ = pack(f.derivative_x(), dy_);
    mag_.resize(cf_.size());
    for (std::size_t j = 0; j < cf_.size(); ++j) {
      mag_[j].resize(cf_[j].size());
      for (std::size_t i = 0; i < cf_[j].size(); ++i) mag_[j][i] = std::abs(cf_[j][i]);
    }
  }

  int deg_y() const { return dy_; }

  /// Coefficients of y -> f(x0, y), ascending.
  std::vector<C> fiber_coeffs(C x0) const { return rows_at(cf_, x0); }

  C f(C x, C y) const { return eval(cf_, x, y); }
  C fy(C x, C y) const { return eval(cfy_, x, y); }
  C fx(C x, C y) const { return eval(cfx_, x, y); }

  /// Sum of |c_ij| |x|^i |y|^j, the natural scale for residuals.
  R magnitude(C x, C y) const {
    R ax = std::abs(x), ay = std::abs(y), acc = 0, yp = 1;
    for (std::size_t j = 0; j < mag_.size(); ++j) {
      R rowacc = 0, xp = 1;
      for (std::size_t i = 0; i < mag_[j].size(); ++i) {
        rowacc += mag_[j][i] * xp;
        xp *= ax;
      }
      acc += rowacc * yp;
      yp *= ay;
    }
    return acc;
  }

 private:
  static std::vector<C> rows_at(const std::vector<std::vector<C>>& grid, C x) {
    std::vector<C> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
      C acc;
      for (auto it = grid[j].rbegin(); it != grid[j].rend(); ++it) acc = acc * x + *it;
      out[j] = acc;
    }
    return out;
  }
  static C eval(const std::vector<std::vector<C>>& grid, C x, C y) {
    C acc;
    for (std::size_t j = grid.size(); j-- > 0;) {
      C row;
      for (auto it = grid[j].rbegin(); it != grid[j].rend(); ++it) row = row * x + *it;
      acc = acc * y + row;
    }
    return acc;
  }

  int dy_;
  std::vector<std::vector<C>> cf_, cfy_, cfx_;
  std::vector<std::vector<R>> mag_;
};

using CurveEvaluator = BasicCurveEvaluator<double>;
using CurveEvaluatorExtended = BasicCurveEvaluator<long double>;

/// Discretized motion of the n fiber roots along a path. positions[s][j] is
/// the location of the strand that started as start[j].
struct StrandTrajectory {
  int n = 0;
  std::vector<double> times;                   // global parameter in [0,1]
  std::vector<std::vector<Complex>> positions;  // one row per accepted sample

  const std::vector<Complex>& start() const { return positions.front(); }
  const std::vector<Complex>& final() const { return positions.back(); }
};

namespace detail {

template <class R>
R min_pairwise_gap(const std::vector<std::complex<R>>& pts) {
  R g = std::numeric_limits<R>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) g = std::min(g, std::abs(pts[i] - pts[j]));
  return g;
}

/// Newton-correct every root at fixed x; returns false if the residual
/// cannot be brought below the relative tolerance.
template <class R>
bool correct_fiber(const BasicCurveEvaluator<R>& ev, std::complex<R> x,
                   std::vector<std::complex<R>>& ys, double rel_tol) {
  for (auto& y : ys) {
    bool ok = false;
    for (int it = 0; it < 40; ++it) {
      std::complex<R> val = ev.f(x, y);
      R scale = std::max(ev.magnitude(x, y), static_cast<R>(1e-300));
      if (std::abs(val) <= static_cast<R>(rel_tol) * scale) {
        ok = true;
        break;
      }
      std::complex<R> der = ev.fy(x, y);
      if (std::abs(der) == static_cast<R>(0)) return false;
      y -= val / der;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

/// The n fiber roots over x0, in ascending order of Re(e^{i theta} y) for the
/// default labeling tilt (theta just below pi/2 sorts by decreasing imaginary
/// part with ties broken by increasing real part).
inline constexpr double kLabelTiltEpsilon = 1e-4;

inline std::vector<int> tilted_order(const std::vector<Complex>& pts, double theta) {
  Complex rot(std::cos(theta), std::sin(theta));
  std::vector<int> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return (rot * pts[static_cast<std::size_t>(a)]).real() <
           (rot * pts[static_cast<std::size_t>(b)]).real();
  });
  return idx;
}

inline std::vector<Complex> fiber_roots(const CurveEvaluator& ev, Complex x0,
                                        const TrackingConfig& cfg = {}) {
  auto coeffs = ev.fiber_coeffs(x0);
  CertifiedRoots rr = roots_univariate(coeffs, cfg.tol);
  int n = static_cast<int>(rr.roots.size());
  double maxrad = 0.0;
  for (double r : rr.radii) maxrad = std::max(maxrad, r);
  double gap = detail::min_pairwise_gap(rr.roots);
  if (!(gap > 2.0 * maxrad) || !(gap > cfg.separation_floor))
    throw DegenerateFiber("fiber roots not pairwise distinct at this base point");
  const double half_pi = 1.5707963267948966192313216916398;
  std::vector<int> order = tilted_order(rr.roots, half_pi - kLabelTiltEpsilon);
  std::vector<Complex> sorted(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) sorted[static_cast<std::size_t>(k)] = rr.roots[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
  return sorted;
}

inline std::vector<Complex> fiber_roots(const BivariatePolynomial& f, Complex x0,
                                        const TrackingConfig& cfg = {}) {
  return fiber_roots(CurveEvaluator(f), x0, cfg);
}

/// Adaptive predictor-corrector continuation of the n fiber roots along a
/// path: first-order Euler predictor, Newton corrector, acceptance when each
/// root moved less than a third of the previous minimal pairwise gap. The
/// step halves on rejection and doubles after four straight accepts (capped
/// at step.initial). Samples are recorded in double regardless of the
/// working precision R.
template <class R>
StrandTrajectory track(const BasicCurveEvaluator<R>& ev, const PathSpec& path,
                       const std::vector<Complex>& start, const TrackingConfig& cfg = {}) {
  using C = std::complex<R>;
  StrandTrajectory traj;
  traj.n = static_cast<int>(start.size());
  traj.times.push_back(0.0);
  traj.positions.push_back(start);

  std::vector<C> cur(start.size());
  for (std::size_t j = 0; j < start.size(); ++j)
    cur[j] = C(static_cast<R>(start[j].real()), static_cast<R>(start[j].imag()));
  double piece_weight = 1.0 / static_cast<double>(path.pieces.size());

  auto record = [&](double t_global) {
    std::vector<Complex> row(cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j)
      row[j] = Complex(static_cast<double>(cur[j].real()), static_cast<double>(cur[j].imag()));
    traj.times.push_back(t_global);
    traj.positions.push_back(std::move(row));
  };

  for (std::size_t pi = 0; pi < path.pieces.size(); ++pi) {
    const PathPiece& piece = path.pieces[pi];
    double t = 0.0;
    double h = cfg.step_initial;
    int streak = 0;
    while (t < 1.0) {
      double step = std::min(h, 1.0 - t);
      double t_next = t + step;
      Complex x0d = piece.at(t), x1d = piece.at(t_next);
      C x0(static_cast<R>(x0d.real()), static_cast<R>(x0d.imag()));
      C x1(static_cast<R>(x1d.real()), static_cast<R>(x1d.imag()));
      R gap_before = detail::min_pairwise_gap(cur);

      // Predictor: dy = -(f_x / f_y) dx per root.
      std::vector<C> next = cur;
      bool valid = true;
      C dx = x1 - x0;
      for (auto& y : next) {
        C der = ev.fy(x0, y);
        if (std::abs(der) == static_cast<R>(0)) {
          valid = false;
          break;
        }
        y += -(ev.fx(x0, y) / der) * dx;
      }
      if (valid) valid = detail::correct_fiber(ev, x1, next, cfg.corrector_tol);

      if (valid) {
        R max_move = 0;
        for (std::size_t j = 0; j < cur.size(); ++j)
          max_move = std::max(max_move, std::abs(next[j] - cur[j]));
        R gap_after = detail::min_pairwise_gap(next);
        valid = max_move < gap_before / static_cast<R>(3) &&
                gap_after > static_cast<R>(cfg.separation_floor);
      }

      if (valid) {
        t = t_next;
        cur = std::move(next);
        record((static_cast<double>(pi) + t) * piece_weight);
        if (++streak >= 4) {
          h = std::min(h * 2.0, cfg.step_initial);
          streak = 0;
        }
      } else {
        h *= 0.5;
        streak = 0;
        if (h < cfg.step_min)
          throw StepUnderflow("tracking step underflow (near-collision); shrink the disk or "
                              "raise precision");
      }
    }
  }
  return traj;
}

inline StrandTrajectory track(const BivariatePolynomial& f, const PathSpec& path,
                              const std::vector<Complex>& start, const TrackingConfig& cfg = {}) {
  return track(CurveEvaluator(f), path, start, cfg);
}

/// Double-precision tracking with the optional long-double retry when the
/// step underflows near a close encounter.
inline StrandTrajectory track_with_fallback(const CurveEvaluator& ev,
                                            const BivariatePolynomial& f, const PathSpec& path,
                                            const std::vector<Complex>& start,
                                            const TrackingConfig& cfg = {}) {
  try {
    return track(ev, path, start, cfg);
  } catch (const StepUnderflow&) {
    if (!cfg.extended_precision) throw;
    CurveEvaluatorExtended evx(f);
    return track(evx, path, start, cfg);
  }
}

/// Match the trajectory's final positions against target points (e.g. the
/// canonical fiber labels at the endpoint); perm[j] = index of the target
/// nearest to strand j. Fails if the matching is ambiguous.
inline std::vector<int> match_positions(const std::vector<Complex>& final_pos,
                                        const std::vector<Complex>& targets) {
  std::vector<int> perm(final_pos.size(), -1);
  std::vector<bool> used(targets.size(), false);
  for (std::size_t j = 0; j < final_pos.size(); ++j) {
    double best = std::numeric_limits<double>::infinity(), second = best;
    int arg = -1;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      double d = std::abs(final_pos[j] - targets[k]);
      if (d < best) {
        second = best;
        best = d;
        arg = static_cast<int>(k);
      } else {
        second = std::min(second, d);
      }
    }
    if (arg < 0 || used[static_cast<std::size_t>(arg)] || !(best < 0.25 * second))
      throw ExtractionMismatch("ambiguous endpoint matching of tracked strands");
    used[static_cast<std::size_t>(arg)] = true;
    perm[j] = arg;
  }
  return perm;
}

struct CollapseResult {
  int m = 0;                      // cluster size
  std::vector<int> cluster;       // trajectory (start-label) indices, sorted
  StrandTrajectory approach;      // the tracked approach, for reuse
};

/// Track the fiber from the start of `approach` toward the critical value it
/// aims at, stopping at distance tol, and identify the unique collapsing
/// cluster by a scale-free single-linkage cut. The descent is staged: if the
/// collapsing roots hit the separation floor before the stop distance (high
/// contact order shrinks gaps much faster than the approach), clustering
/// happens at the deepest distance tracking could reach.
inline CollapseResult collapse_cluster(const CurveEvaluator& ev, Complex p_i,
                                       const PathSpec& approach, const std::vector<Complex>& start,
                                       const TrackingConfig& cfg = {}) {
  CollapseResult res;
  Complex from = approach.start();
  double r0 = std::abs(from - p_i);
  Complex dir = (from - p_i) / r0;

  res.approach.n = static_cast<int>(start.size());
  res.approach.times.push_back(0.0);
  res.approach.positions.push_back(start);

  std::vector<Complex> cur = start;
  double d_prev = r0;
  for (double d = r0 / 8.0; d_prev > cfg.tol; d = std::max(d / 8.0, cfg.tol)) {
    PathSpec leg = PathSpec::segment(p_i + d_prev * dir, p_i + d * dir);
    leg.endpoint_near_critical = true;
    try {
      StrandTrajectory t = track(ev, leg, cur, cfg);
      cur = t.final();
      for (std::size_t s = 1; s < t.positions.size(); ++s) {
        res.approach.times.push_back(t.times[s]);
        res.approach.positions.push_back(t.positions[s]);
      }
      d_prev = d;
    } catch (const StepUnderflow&) {
      break;  // the floor stops us; the cluster is already far tighter
    }
    if (d <= cfg.tol) break;
  }
  const std::vector<Complex>& fin = cur;
  double scale = r0;
  Clustering cl = single_linkage_clusters(fin, cfg.cluster_ratio, scale);
  std::vector<std::vector<int>> multi;
  for (auto& g : cl.groups)
    if (g.size() >= 2) multi.push_back(g);
  if (multi.empty()) {
    if (cl.groups.size() == 1) {
      multi.push_back(cl.groups.front());
    } else {
      throw AmbiguousCluster("no collapsing cluster separates at ratio " +
                             std::to_string(cfg.cluster_ratio));
    }
  }
  if (multi.size() > 1)
    throw MultipleClusters("fiber has several collapsing clusters (genericity violation)");
  res.cluster = multi.front();
  std::sort(res.cluster.begin(), res.cluster.end());
  res.m = static_cast<int>(res.cluster.size());
  return res;
}

}  // namespace curvetop
