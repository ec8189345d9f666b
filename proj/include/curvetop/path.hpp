#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace curvetop {

/// One primitive piece of a path in the x-plane, parametrized over [0,1].
struct PathPiece {
  enum class Kind { segment, circular_arc } kind;
  std::complex<double> a, b;        // segment endpoints
  std::complex<double> center;      // arc data
  double radius = 0.0;
  double angle0 = 0.0, angle1 = 0.0;  // angle1 > angle0 traverses ccw

  static PathPiece segment(std::complex<double> from, std::complex<double> to) {
    PathPiece p{Kind::segment, from, to, {0, 0}};
    return p;
  }
  static PathPiece arc(std::complex<double> center, double radius, double a0, double a1) {
    PathPiece p{Kind::circular_arc, {0, 0}, {0, 0}, center};
    p.radius = radius;
    p.angle0 = a0;
    p.angle1 = a1;
    return p;
  }

  std::complex<double> at(double t) const {
    if (kind == Kind::segment) return a + (b - a) * t;
    double ang = angle0 + (angle1 - angle0) * t;
    return center + radius * std::complex<double>(std::cos(ang), std::sin(ang));
  }

  std::complex<double> start() const { return at(0.0); }
  std::complex<double> end() const { return at(1.0); }

  double length() const {
    if (kind == Kind::segment) return std::abs(b - a);
    return radius * std::abs(angle1 - angle0);
  }

  PathPiece reversed() const {
    if (kind == Kind::segment) return segment(b, a);
    return arc(center, radius, angle1, angle0);
  }
};

/// Piecewise path: segments, arcs, polylines all reduce to this.
struct PathSpec {
  std::vector<PathPiece> pieces;
  bool endpoint_near_critical = false;  // declared endpoint on/inside a safety disk

  static PathSpec segment(std::complex<double> a, std::complex<double> b) {
    return {{PathPiece::segment(a, b)}};
  }
  static PathSpec polyline(const std::vector<std::complex<double>>& vs) {
    PathSpec p;
    for (std::size_t i = 0; i + 1 < vs.size(); ++i)
      p.pieces.push_back(PathPiece::segment(vs[i], vs[i + 1]));
    return p;
  }
  static PathSpec full_circle_ccw(std::complex<double> center, double radius, double start_angle) {
    const double two_pi = 6.283185307179586476925286766559;
    return {{PathPiece::arc(center, radius, start_angle, start_angle + two_pi)}};
  }

  std::complex<double> start() const { return pieces.front().start(); }
  std::complex<double> end() const { return pieces.back().end(); }

  PathSpec reversed() const {
    PathSpec r;
    r.endpoint_near_critical = endpoint_near_critical;
    for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) r.pieces.push_back(it->reversed());
    return r;
  }

  PathSpec then(const PathSpec& next) const {
    PathSpec r = *this;
    r.pieces.insert(r.pieces.end(), next.pieces.begin(), next.pieces.end());
    return r;
  }
};

}  // namespace curvetop
