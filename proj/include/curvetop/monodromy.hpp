#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "curvetop/arc_system.hpp"
#include "curvetop/braid.hpp"
#include "curvetop/curve.hpp"
#include "curvetop/errors.hpp"
#include "curvetop/extract.hpp"
#include "curvetop/tracking.hpp"

namespace curvetop {

/// Everything recorded at one critical value.
struct LocalMonodromy {
  int index = 0;
  Braid transport;              // phi_i, braid of the arc s_i
  Braid local;                  // beta_i bar, braid of one ccw loop of dU_i
  Braid global;                 // beta_i = phi_i . local . phi_i^-1 (path order)
  int m = 0;                    // collapse multiplicity
  std::vector<int> collapse_base_labels;   // base-fiber labels, ascending
  std::vector<int> collapse_positions;     // positions at p'_i, ascending & consecutive
  std::vector<int> relator_labels;         // I_i: collapse labels minus the largest
};

struct MonodromyData {
  BivariatePolynomial f;
  int n = 0;
  CriticalSet X;
  ArcSystem arcs;
  double phase = 0.0;           // shared projection phase for every extraction
  std::vector<Complex> base_fiber;  // canonical order at p0
  std::vector<LocalMonodromy> locals;  // by critical value index

  const LocalMonodromy& at(int i) const { return locals[static_cast<std::size_t>(i)]; }
};

namespace detail {

/// Positions occupied by the cluster strands in the tilted order at the
/// start of the local loop; they must be consecutive for the local handle
/// template to apply.
inline std::vector<int> cluster_positions(const std::vector<Complex>& at_pprime,
                                          const std::vector<int>& cluster, double theta) {
  std::vector<int> order = tilted_order(at_pprime, theta);
  std::vector<int> pos_of(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) pos_of[static_cast<std::size_t>(order[p])] = static_cast<int>(p);
  std::vector<int> pos;
  for (int label : cluster) pos.push_back(pos_of[static_cast<std::size_t>(label)]);
  std::sort(pos.begin(), pos.end());
  return pos;
}

}  // namespace detail

/// Full braid monodromy of a generic curve: tracks every arc, loop and
/// approach, selects one projection phase for all of them, and packages the
/// braids with the collapse bookkeeping. Trajectory starts are chained
/// bitwise, so words compose exactly across junctions.
inline MonodromyData assemble(const BivariatePolynomial& f, const CriticalSet& X,
                              const ArcSystem& arcs, const TrackingConfig& cfg = {},
                              int seed = 0) {
  MonodromyData md;
  md.f = f;
  md.n = f.degree();
  md.X = X;
  md.arcs = arcs;

  CurveEvaluator ev(f);
  std::vector<Complex> base = fiber_roots(ev, arcs.p0, cfg);
  md.base_fiber = base;

  int N = X.size();
  struct Tracked {
    StrandTrajectory transport, loop;
    CollapseResult collapse;
  };
  std::vector<Tracked> tracked(static_cast<std::size_t>(N));

  for (int i = 0; i < N; ++i) {
    const SystemArc& arc = arcs.arcs[static_cast<std::size_t>(i)];
    Tracked& tr = tracked[static_cast<std::size_t>(i)];
    tr.transport = track_with_fallback(ev, f, arc.path, base, cfg);

    Complex center = X.points[static_cast<std::size_t>(i)].z;
    double start_angle = std::arg(arc.endpoint - center);
    PathSpec loop = PathSpec::full_circle_ccw(center, arc.disk_radius, start_angle);
    tr.loop = track_with_fallback(ev, f, loop, tr.transport.final(), cfg);

    Complex dir = (arc.endpoint - center) / std::abs(arc.endpoint - center);
    PathSpec approach = PathSpec::segment(arc.endpoint, center + cfg.tol * dir);
    approach.endpoint_near_critical = true;
    tr.collapse = collapse_cluster(ev, center, approach, tr.transport.final(), cfg);
  }

  std::vector<const StrandTrajectory*> all;
  for (auto& tr : tracked) {
    all.push_back(&tr.transport);
    all.push_back(&tr.loop);
  }
  md.phase = select_phase(all, seed);

  // Base labels: the canonical order at p0 must agree between the default
  // labeling tilt and the selected phase (both sit just below pi/2).
  {
    std::vector<int> check = tilted_order(base, md.phase);
    for (int k = 0; k < md.n; ++k)
      if (check[static_cast<std::size_t>(k)] != k)
        throw PhaseDegeneracy("selected phase reorders the base fiber labels");
  }

  for (int i = 0; i < N; ++i) {
    Tracked& tr = tracked[static_cast<std::size_t>(i)];
    LocalMonodromy lm;
    lm.index = i;
    lm.transport = extract_with_phase(tr.transport, md.phase);
    lm.local = extract_with_phase(tr.loop, md.phase);
    lm.global = compose(compose(lm.transport, lm.local), lm.transport.inverse());

    lm.m = tr.collapse.m;
    // The tracked strand index is the base label: strand j started at
    // base[j], the j-th point of the canonical base order.
    lm.collapse_base_labels = tr.collapse.cluster;

    // Positions are ascending but need not be consecutive: a far strand can
    // land between the cluster members in projection. The attaching-circle
    // pairs are indexed inside the cluster, so this is only a drawing matter.
    lm.collapse_positions =
        detail::cluster_positions(tr.transport.final(), tr.collapse.cluster, md.phase);

    // Loop permutation must fix every strand outside the cluster (in the
    // position indexing at p'_i).
    std::vector<int> perm = permutation(lm.local);
    for (int p = 0; p < md.n; ++p) {
      bool in_cluster =
          std::find(lm.collapse_positions.begin(), lm.collapse_positions.end(), p) !=
          lm.collapse_positions.end();
      if (!in_cluster && perm[static_cast<std::size_t>(p)] != p)
        throw ExtractionMismatch("local monodromy moves a non-collapsing strand");
    }

    // Drop rule: the largest base label in the transported collapse set is
    // omitted, leaving |I_i| = m_i - 1 relator indices.
    lm.relator_labels = lm.collapse_base_labels;
    lm.relator_labels.pop_back();  // collapse_base_labels is ascending

    md.locals.push_back(std::move(lm));
  }
  return md;
}

inline MonodromyData assemble(const BivariatePolynomial& f, const TrackingConfig& cfg = {},
                              int seed = 0) {
  CriticalSet X = critical_values(f, cfg.tol, cfg.cluster_ratio);
  GenericityReport rep = genericity_check(f, X, cfg.cluster_ratio);
  if (!rep.pass()) throw Error("assemble requires a generic projection (run the shear ladder)");
  ArcSystem arcs = build_arc_system(X);
  return assemble(f, X, arcs, cfg, seed);
}

/// Local monodromy of one critical value: the loop braid, the collapse
/// multiplicity and the collapsing strand labels at p'_i.
struct LocalMonodromyResult {
  Braid local;
  int m = 0;
  std::vector<int> collapse_positions;
};

inline LocalMonodromyResult local_monodromy(const BivariatePolynomial& f, int i,
                                            const ArcSystem& arcs, const CriticalSet& X,
                                            const TrackingConfig& cfg = {}, int seed = 0) {
  CurveEvaluator ev(f);
  const SystemArc& arc = arcs.arcs[static_cast<std::size_t>(i)];
  std::vector<Complex> base = fiber_roots(ev, arcs.p0, cfg);
  StrandTrajectory transport = track(ev, arc.path, base, cfg);

  Complex center = X.points[static_cast<std::size_t>(i)].z;
  double start_angle = std::arg(arc.endpoint - center);
  StrandTrajectory loop =
      track(ev, PathSpec::full_circle_ccw(center, arc.disk_radius, start_angle),
            transport.final(), cfg);

  Complex dir = (arc.endpoint - center) / std::abs(arc.endpoint - center);
  PathSpec approach = PathSpec::segment(arc.endpoint, center + cfg.tol * dir);
  approach.endpoint_near_critical = true;
  CollapseResult col = collapse_cluster(ev, center, approach, transport.final(), cfg);

  double theta = select_phase({&transport, &loop}, seed);
  LocalMonodromyResult res;
  res.local = extract_with_phase(loop, theta);
  res.m = col.m;
  res.collapse_positions = detail::cluster_positions(transport.final(), col.cluster, theta);
  return res;
}

/// Braid of the trajectory along s_i from p0 to p'_i.
inline Braid transport_braid(const BivariatePolynomial& f, int i, const ArcSystem& arcs,
                             const TrackingConfig& cfg = {}, int seed = 0) {
  CurveEvaluator ev(f);
  std::vector<Complex> base = fiber_roots(ev, arcs.p0, cfg);
  StrandTrajectory transport =
      track(ev, arcs.arcs[static_cast<std::size_t>(i)].path, base, cfg);
  return braid_from_trajectory(transport, seed);
}

/// Product of the global monodromies in the cyclic arc order at p0 (ccw,
/// starting just above the positive real direction). Equals the full twist
/// exactly when the curve is transverse to the line at infinity.
inline Braid monodromy_at_infinity(const MonodromyData& md) {
  Braid acc(md.n);
  for (int idx : md.arcs.order) acc = compose(acc, md.at(idx).global);
  return acc;
}

/// Exact transversality-at-infinity test: the top-degree form must have n
/// distinct directions, none of them vertical.
inline bool transverse_at_infinity(const BivariatePolynomial& f) {
  int n = f.degree();
  UPoly top(static_cast<std::size_t>(n) + 1);
  for (auto& [k, c] : f.terms())
    if (k.first + k.second == n) top[static_cast<std::size_t>(k.second)] = c;
  utrim(top);
  if (udeg(top) != n) return false;  // the point [0:1:0] lies on the closure
  return uis_squarefree(top);
}

}  // namespace curvetop
