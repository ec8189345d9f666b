#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "curvetop/errors.hpp"

namespace curvetop {

using Complex = std::complex<double>;

struct CertifiedRoots {
  std::vector<Complex> roots;
  std::vector<double> radii;  // Weierstrass inclusion radii
};

namespace detail {

inline Complex horner(const std::vector<Complex>& p, Complex z) {
  Complex acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

inline Complex horner_deriv(const std::vector<Complex>& p, Complex z) {
  Complex acc;
  for (std::size_t i = p.size(); i-- > 1;) acc = acc * z + p[i] * static_cast<double>(i);
  return acc;
}

}  // namespace detail

/// All d roots (with multiplicity) of a degree-d complex polynomial,
/// coefficients in ascending order. Aberth-Ehrlich iteration from a
/// deterministic initial circle, with Weierstrass a-posteriori radii.
/// No tolerance check: radii of multiple-root clusters stay large.
inline CertifiedRoots solve_univariate(std::vector<Complex> p, int max_iter = 400) {
  while (!p.empty() && std::abs(p.back()) == 0.0) p.pop_back();
  if (p.size() < 2) throw NoConvergence("root solve on a constant polynomial");
  int d = static_cast<int>(p.size()) - 1;

  // Scale to a monic polynomial for stability of the bounds.
  Complex lead = p.back();
  for (auto& c : p) c /= lead;

  // Strip exact zero roots (they are common for our discriminants).
  int zero_roots = 0;
  while (zero_roots < d && std::abs(p[static_cast<std::size_t>(zero_roots)]) == 0.0) ++zero_roots;
  std::vector<Complex> q(p.begin() + zero_roots, p.end());
  int dq = d - zero_roots;

  std::vector<Complex> z(static_cast<std::size_t>(dq));
  if (dq > 0) {
    double radius = 0.0;
    for (int i = 0; i < dq; ++i) radius = std::max(radius, std::abs(q[static_cast<std::size_t>(i)]));
    radius = 1.0 + radius;
    const double two_pi = 6.283185307179586476925286766559;
    for (int i = 0; i < dq; ++i) {
      double ang = two_pi * (static_cast<double>(i) / dq) + 0.4;
      z[static_cast<std::size_t>(i)] = radius * Complex(std::cos(ang), std::sin(ang));
    }

    bool converged = false;
    for (int iter = 0; iter < max_iter; ++iter) {
      double max_step = 0.0;
      for (int i = 0; i < dq; ++i) {
        Complex zi = z[static_cast<std::size_t>(i)];
        Complex pv = detail::horner(q, zi);
        Complex dv = detail::horner_deriv(q, zi);
        Complex newton;
        if (std::abs(dv) == 0.0) {
          newton = Complex(std::pow(std::abs(pv), 1.0 / dq), 0.0) + Complex(1e-12, 1e-12);
        } else {
          newton = pv / dv;
        }
        Complex s;
        for (int j = 0; j < dq; ++j)
          if (j != i) {
            Complex diff = zi - z[static_cast<std::size_t>(j)];
            if (std::abs(diff) == 0.0) diff = Complex(1e-300, 0);
            s += 1.0 / diff;
          }
        Complex denom = 1.0 - newton * s;
        Complex step = std::abs(denom) == 0.0 ? newton : newton / denom;
        z[static_cast<std::size_t>(i)] = zi - step;
        max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(zi)));
      }
      if (max_step < 1e-15) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      // Multiple roots stall the relative-step test; accept if the
      // Weierstrass radii certify the cluster instead.
    }
  }

  CertifiedRoots out;
  for (int i = 0; i < zero_roots; ++i) {
    out.roots.push_back(Complex(0, 0));
    out.radii.push_back(0.0);
  }
  for (int i = 0; i < dq; ++i) {
    Complex zi = z[static_cast<std::size_t>(i)];
    Complex w = detail::horner(q, zi);
    for (int j = 0; j < dq; ++j)
      if (j != i) {
        Complex diff = zi - z[static_cast<std::size_t>(j)];
        if (std::abs(diff) == 0.0) diff = Complex(1e-300, 0);
        w /= diff;
      }
    out.roots.push_back(zi);
    out.radii.push_back(static_cast<double>(dq) * std::abs(w));
  }

  return out;
}

/// Certified variant: every Weierstrass radius must come in below
/// tol * (root scale), which holds for simple (or well-separated) roots.
inline CertifiedRoots roots_univariate(const std::vector<Complex>& p, double tol,
                                       int max_iter = 400) {
  CertifiedRoots out = solve_univariate(p, max_iter);
  double scale = 1.0;
  for (auto& r : out.roots) scale = std::max(scale, std::abs(r));
  for (double r : out.radii)
    if (!(r < tol * scale))
      throw NoConvergence("root certification failed: radius " + std::to_string(r) +
                          " exceeds tolerance");
  return out;
}

}  // namespace curvetop
