#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "curvetop/braid.hpp"
#include "curvetop/errors.hpp"
#include "curvetop/tracking.hpp"

namespace curvetop {

/// Deterministic projection-phase candidates. All sit just below pi/2, so
/// the induced strand order agrees with the canonical labeling (decreasing
/// imaginary part, ties by increasing real part). The seed rotates the
/// candidate order.
inline std::vector<double> phase_candidates(int seed = 0) {
  const double half_pi = 1.5707963267948966192313216916398;
  std::vector<double> cands(64);
  double eps = kLabelTiltEpsilon;
  for (int m = 0; m < 64; ++m) {
    cands[static_cast<std::size_t>(m)] = half_pi - eps;
    eps *= 1.13;
  }
  if (seed != 0) {
    int shift = ((seed % 64) + 64) % 64;
    std::rotate(cands.begin(), cands.begin() + shift, cands.end());
  }
  return cands;
}

namespace detail {

/// Worst real-part separation of any strand pair at any sample, relative to
/// the configuration scale. The phase must keep this strictly positive.
inline double phase_quality(const std::vector<const StrandTrajectory*>& trajs, double theta) {
  Complex rot(std::cos(theta), std::sin(theta));
  double worst = std::numeric_limits<double>::infinity();
  for (const StrandTrajectory* tr : trajs)
    for (const auto& row : tr->positions) {
      double scale = 1e-30;
      for (const auto& z : row) scale = std::max(scale, std::abs(z));
      for (std::size_t i = 0; i < row.size(); ++i)
        for (std::size_t j = i + 1; j < row.size(); ++j) {
          double sep = std::abs((rot * (row[i] - row[j])).real()) / scale;
          worst = std::min(worst, sep);
        }
    }
  return worst;
}

}  // namespace detail

/// First candidate phase that separates all strands in real part at every
/// sample of every trajectory.
inline double select_phase(const std::vector<const StrandTrajectory*>& trajs, int seed = 0,
                           double min_separation = 1e-12) {
  for (double theta : phase_candidates(seed))
    if (detail::phase_quality(trajs, theta) > min_separation) return theta;
  throw PhaseDegeneracy("no projection phase separates the strands; refine the trajectory");
}

/// Reads the braid word off a trajectory with a fixed projection phase.
/// Strands are ordered by Re(e^{i theta} y); each adjacent-order transposition
/// between consecutive samples emits one Artin letter, positive when the
/// strand arriving from the right passes above (counterclockwise half twist).
/// Simultaneous distant crossings are serialized into the commutation normal
/// form so that refinement cannot reorder them.
inline Braid extract_with_phase(const StrandTrajectory& traj, double theta) {
  int n = traj.n;
  Braid out(n);
  if (n <= 1 || traj.positions.size() < 2) return out;

  Complex rot(std::cos(theta), std::sin(theta));
  auto tilted = [&](const std::vector<Complex>& row, int j) {
    return rot * row[static_cast<std::size_t>(j)];
  };

  // order[pos] = strand index occupying position pos (by tilted real part).
  std::vector<int> order = tilted_order(traj.positions.front(), theta);
  std::vector<int> pos_of(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) pos_of[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p;

  struct Event {
    double t;
    int a, b;  // strand indices
    int sign;
  };

  std::vector<int> word;
  for (std::size_t s = 1; s < traj.positions.size(); ++s) {
    const auto& prev = traj.positions[s - 1];
    const auto& next = traj.positions[s];
    std::vector<Event> events;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double d0 = (tilted(prev, i) - tilted(prev, j)).real();
        double d1 = (tilted(next, i) - tilted(next, j)).real();
        if ((d0 > 0) == (d1 > 0)) continue;
        double tstar = d0 / (d0 - d1);
        // Right-to-left mover and the imaginary parts at the crossing.
        int mover = d0 > 0 ? i : j;
        int other = mover == i ? j : i;
        double im_m = (1 - tstar) * tilted(prev, mover).imag() + tstar * tilted(next, mover).imag();
        double im_o = (1 - tstar) * tilted(prev, other).imag() + tstar * tilted(next, other).imag();
        events.push_back({tstar, i, j, im_m > im_o ? 1 : -1});
      }
    std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) {
      if (x.t != y.t) return x.t < y.t;
      return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });

    // Process events in time order; each must swap currently adjacent
    // strands. Events stalled by ordering (numerically tied times) are
    // retried after the others.
    std::vector<Event> pending(events);
    while (!pending.empty()) {
      bool progressed = false;
      std::vector<Event> stalled;
      for (const Event& e : pending) {
        int pa = pos_of[static_cast<std::size_t>(e.a)], pb = pos_of[static_cast<std::size_t>(e.b)];
        if (std::abs(pa - pb) != 1) {
          stalled.push_back(e);
          continue;
        }
        int k = std::min(pa, pb) + 1;  // 1-based generator index
        word.push_back(e.sign * k);
        std::swap(order[static_cast<std::size_t>(pa)], order[static_cast<std::size_t>(pb)]);
        pos_of[static_cast<std::size_t>(e.a)] = pb;
        pos_of[static_cast<std::size_t>(e.b)] = pa;
        progressed = true;
      }
      if (!progressed)
        throw ExtractionMismatch("crossing events cannot be serialized; refine the trajectory");
      pending = std::move(stalled);
    }

    std::vector<int> check = tilted_order(next, theta);
    if (check != order)
      throw ExtractionMismatch("strand order drifted between samples; refine the trajectory");
  }

  out.word = commutation_normal_form(std::move(word));
  return out;
}

/// Extraction with the trajectory's own deterministic phase choice.
inline Braid braid_from_trajectory(const StrandTrajectory& traj, int seed = 0) {
  double theta = select_phase({&traj}, seed);
  return extract_with_phase(traj, theta);
}

}  // namespace curvetop
