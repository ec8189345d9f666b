#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "curvetop/curve.hpp"
#include "curvetop/errors.hpp"
#include "curvetop/gaussian_rational.hpp"
#include "curvetop/path.hpp"

namespace curvetop {

namespace exact {

/// Planar point with exact rational coordinates (doubles convert exactly).
struct Pt {
  Rational x, y;
  Pt() = default;
  Pt(const std::complex<double>& z) : x(z.real()), y(z.imag()) {}  // NOLINT
  Pt(Rational xx, Rational yy) : x(std::move(xx)), y(std::move(yy)) {}
};

inline int sign(const Rational& q) { return q == 0 ? 0 : (q < 0 ? -1 : 1); }

inline int orient(const Pt& a, const Pt& b, const Pt& c) {
  return sign((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

inline bool bbox_overlap(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  auto mm = [](const Rational& u, const Rational& v) { return std::pair(std::min(u, v), std::max(u, v)); };
  auto [x1l, x1h] = mm(a.x, b.x);
  auto [x2l, x2h] = mm(c.x, d.x);
  auto [y1l, y1h] = mm(a.y, b.y);
  auto [y2l, y2h] = mm(c.y, d.y);
  return !(x1h < x2l || x2h < x1l || y1h < y2l || y2h < y1l);
}

/// Exact closed-segment intersection test.
inline bool segments_intersect(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  if (!bbox_overlap(a, b, c, d)) return false;
  int o1 = orient(a, b, c), o2 = orient(a, b, d);
  int o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  auto on = [&](const Pt& p, const Pt& q, const Pt& r) {
    return orient(p, q, r) == 0 && std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
           std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
  };
  return on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b);
}

inline bool points_equal(const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }

/// True iff the two segments meet anywhere except exactly at the shared
/// point `allowed` (which both may use as an endpoint).
inline bool segments_intersect_except_at(const Pt& a, const Pt& b, const Pt& c, const Pt& d,
                                         const Pt& allowed) {
  if (!segments_intersect(a, b, c, d)) return false;
  // A shared endpoint at `allowed` is fine as long as the segments only
  // touch there: verify by checking that neither of the other endpoints sits
  // on the opposite segment and the segments are not collinear-overlapping.
  bool a_shared = points_equal(a, allowed) || points_equal(b, allowed);
  bool c_shared = points_equal(c, allowed) || points_equal(d, allowed);
  if (!a_shared || !c_shared) return true;
  const Pt& a_other = points_equal(a, allowed) ? b : a;
  const Pt& c_other = points_equal(c, allowed) ? d : c;
  if (orient(allowed, a_other, c_other) != 0) return false;  // only the shared vertex
  // Collinear: overlapping iff the other endpoints are on the same side ray.
  Rational dot = (a_other.x - allowed.x) * (c_other.x - allowed.x) +
                 (a_other.y - allowed.y) * (c_other.y - allowed.y);
  return dot > 0;
}

/// Squared distance from segment [a,b] to point c, compared exactly
/// against bound^2: true iff dist^2 >= bound2.
inline bool segment_clears_disk(const Pt& a, const Pt& b, const Pt& c, const Rational& bound2) {
  Rational abx = b.x - a.x, aby = b.y - a.y;
  Rational acx = c.x - a.x, acy = c.y - a.y;
  Rational len2 = abx * abx + aby * aby;
  Rational proj = acx * abx + acy * aby;
  Rational d2;
  if (len2 == 0 || proj <= 0) {
    d2 = acx * acx + acy * acy;
  } else if (proj >= len2) {
    Rational bcx = c.x - b.x, bcy = c.y - b.y;
    d2 = bcx * bcx + bcy * bcy;
  } else {
    Rational cross = abx * acy - aby * acx;
    return cross * cross >= bound2 * len2;
  }
  return d2 >= bound2;
}

}  // namespace exact

/// One arc of the non-intersecting system: a two-segment polyline
/// p0 -> waypoint -> p' with p' on the boundary of the disk U_i.
struct SystemArc {
  int index = 0;                    // critical value index
  std::complex<double> waypoint;
  std::complex<double> endpoint;    // p'_i on the disk boundary
  double disk_radius = 0.0;         // r_i
  PathSpec path;                    // p0 -> waypoint -> endpoint
};

struct ArcSystem {
  std::complex<double> p0;
  std::vector<SystemArc> arcs;      // ordered by critical value index
  std::vector<int> order;           // cyclic order: ccw by departure angle at p0
};

namespace detail {

/// Exact validity check of a candidate arc against disks and earlier arcs.
inline bool arc_candidate_ok(const std::complex<double>& p0, const std::complex<double>& w,
                             const std::complex<double>& pprime, int self,
                             const std::vector<CriticalValue>& X, const std::vector<double>& radii,
                             const std::vector<SystemArc>& placed) {
  exact::Pt P0(p0), W(w), PP(pprime);
  // Both segments must clear every inflated disk; the incoming segment is
  // radial toward its own center, so it only meets its own circle at p'.
  for (std::size_t j = 0; j < X.size(); ++j) {
    exact::Pt C(X[j].z);
    Rational infl = Rational(1.5) * Rational(radii[j]);
    Rational infl2 = infl * infl;
    if (!exact::segment_clears_disk(P0, W, C, infl2)) return false;
    if (static_cast<int>(j) != self && !exact::segment_clears_disk(W, PP, C, infl2)) return false;
  }
  for (const SystemArc& other : placed) {
    exact::Pt OW(other.waypoint), OP(other.endpoint);
    if (exact::segments_intersect_except_at(P0, W, P0, OW, P0)) return false;
    if (exact::segments_intersect(P0, W, OW, OP)) return false;
    if (exact::segments_intersect(W, PP, P0, OW)) return false;
    if (exact::segments_intersect(W, PP, OW, OP)) return false;
  }
  return true;
}

}  // namespace detail

/// Deterministic non-intersecting arc system. The base point sits on the
/// real axis to the right of everything; waypoints live on a circle around
/// the centroid of X, found by a fixed angle ladder and verified with exact
/// segment predicates.
inline ArcSystem build_arc_system(const CriticalSet& X, double p0_extra_offset = 0.0) {
  if (X.points.empty()) throw Error("arc system needs at least one critical value");
  int N = X.size();

  double max_re = -std::numeric_limits<double>::infinity();
  double diam = 0.0;
  std::complex<double> centroid;
  for (auto& p : X.points) {
    max_re = std::max(max_re, p.z.real());
    centroid += p.z;
  }
  centroid /= static_cast<double>(N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      diam = std::max(diam, std::abs(X.points[static_cast<std::size_t>(i)].z -
                                     X.points[static_cast<std::size_t>(j)].z));

  ArcSystem sys;
  sys.p0 = {max_re + 2.0 * diam + 1.0 + p0_extra_offset, 0.0};

  std::vector<double> radii(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    double d = std::abs(sys.p0 - X.points[static_cast<std::size_t>(i)].z);
    for (int j = 0; j < N; ++j)
      if (j != i)
        d = std::min(d, std::abs(X.points[static_cast<std::size_t>(i)].z -
                                 X.points[static_cast<std::size_t>(j)].z));
    radii[static_cast<std::size_t>(i)] = 0.25 * d;
  }

  double rmax_c = 0.0;
  for (int i = 0; i < N; ++i)
    rmax_c = std::max(rmax_c, std::abs(X.points[static_cast<std::size_t>(i)].z - centroid) +
                                  radii[static_cast<std::size_t>(i)]);
  double R0 = std::min(1.5 * rmax_c + 0.25, 0.6 * std::abs(sys.p0 - centroid));
  R0 = std::max(R0, 1.25 * rmax_c);

  // Near arcs first: they are the least obstructed and act as obstacles for
  // the later ones.
  std::vector<int> by_distance(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) by_distance[static_cast<std::size_t>(i)] = i;
  std::sort(by_distance.begin(), by_distance.end(), [&](int a, int b) {
    double da = std::abs(sys.p0 - X.points[static_cast<std::size_t>(a)].z);
    double db = std::abs(sys.p0 - X.points[static_cast<std::size_t>(b)].z);
    if (da != db) return da < db;
    return X.points[static_cast<std::size_t>(a)].z.imag() <
           X.points[static_cast<std::size_t>(b)].z.imag();
  });

  const double pi = 3.1415926535897932384626433832795;
  std::vector<SystemArc> placed;
  for (double R : {R0, 1.3 * R0, 0.75 * R0, 1.6 * R0}) {
    placed.clear();
    bool all_ok = true;
    for (int rank = 0; rank < N && all_ok; ++rank) {
      int i = by_distance[static_cast<std::size_t>(rank)];
      std::complex<double> pi_z = X.points[static_cast<std::size_t>(i)].z;
      double base_angle = std::abs(pi_z - centroid) < 1e-12 * (1.0 + std::abs(centroid))
                              ? 0.0
                              : std::arg(pi_z - centroid);
      bool found = false;
      for (int m = 0; m < 64 && !found; ++m) {
        double delta = (m + 1) / 2 * (2.0 * pi / 48.0);
        double ang = base_angle + (m % 2 == 1 ? delta : -delta);
        if (m == 0) ang = base_angle;
        std::complex<double> w = centroid + R * std::complex<double>(std::cos(ang), std::sin(ang));
        double wd = std::abs(w - pi_z);
        if (wd < 2.0 * radii[static_cast<std::size_t>(i)]) continue;
        std::complex<double> pprime =
            pi_z + radii[static_cast<std::size_t>(i)] * (w - pi_z) / wd;
        if (detail::arc_candidate_ok(sys.p0, w, pprime, i, X.points, radii, placed)) {
          SystemArc arc;
          arc.index = i;
          arc.waypoint = w;
          arc.endpoint = pprime;
          arc.disk_radius = radii[static_cast<std::size_t>(i)];
          arc.path = PathSpec::polyline({sys.p0, w, pprime});
          placed.push_back(arc);
          found = true;
        }
      }
      if (!found) all_ok = false;
    }
    if (all_ok) {
      std::sort(placed.begin(), placed.end(),
                [](const SystemArc& a, const SystemArc& b) { return a.index < b.index; });
      sys.arcs = placed;
      // Cyclic order: ccw by departure angle at p0, starting just above the
      // positive real direction.
      std::vector<int> ord(static_cast<std::size_t>(N));
      for (int k = 0; k < N; ++k) ord[static_cast<std::size_t>(k)] = k;
      auto departure = [&](int k) {
        double a = std::arg(sys.arcs[static_cast<std::size_t>(k)].waypoint - sys.p0);
        if (a < 0) a += 2.0 * pi;
        return a;
      };
      std::sort(ord.begin(), ord.end(), [&](int a, int b) { return departure(a) < departure(b); });
      sys.order = ord;
      return sys;
    }
  }
  throw ArcCrossing("arc system construction failed; widen the base point offset");
}

}  // namespace curvetop
