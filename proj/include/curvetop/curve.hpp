#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "curvetop/bivariate.hpp"
#include "curvetop/cluster.hpp"
#include "curvetop/errors.hpp"
#include "curvetop/rootfind.hpp"
#include "curvetop/univariate.hpp"

namespace curvetop {

/// Content of f with respect to y: gcd over Q(i)[x] of the y-coefficients.
inline UPoly content_x(const BivariatePolynomial& f) {
  UPoly g;
  for (const UPoly& c : f.y_coefficients())
    if (!uis_zero(c)) g = uis_zero(g) ? umonic(c) : ugcd(g, c);
  return g;
}

inline BivariatePolynomial divide_by_content(const BivariatePolynomial& f, const UPoly& c) {
  BivariatePolynomial r;
  auto cs = f.y_coefficients();
  for (int j = 0; j < static_cast<int>(cs.size()); ++j) {
    if (uis_zero(cs[static_cast<std::size_t>(j)])) continue;
    UPoly q = udiv_exact(cs[static_cast<std::size_t>(j)], c);
    for (int i = 0; i <= udeg(q); ++i) r.set({i, j}, q[static_cast<std::size_t>(i)]);
  }
  return r;
}

/// Res_y(f, g) as an exact polynomial in x, computed by specializing x at
/// integer sample points and interpolating. Sample points where a leading
/// y-coefficient vanishes are skipped (the specialized resultant would not
/// agree with the specialization of the resultant there).
inline UPoly resultant_y(const BivariatePolynomial& f, const BivariatePolynomial& g) {
  int dyf = f.deg_y(), dyg = g.deg_y();
  if (dyf < 0 || dyg < 0) return {};
  int dxf = std::max(0, f.deg_x()), dxg = std::max(0, g.deg_x());
  int bound = dxf * dyg + dxg * dyf;

  auto fcs = f.y_coefficients();
  auto gcs = g.y_coefficients();
  const UPoly& lf = fcs.back();
  const UPoly& lg = gcs.back();

  std::vector<GaussianRational> xs, ys;
  long sample = 0;
  while (static_cast<int>(xs.size()) < bound + 1) {
    GaussianRational x0{Rational(sample)};
    ++sample;
    if (sample > 8L * (bound + 4)) throw Error("resultant sampling failed to find good points");
    if (ueval(lf, x0).is_zero() || ueval(lg, x0).is_zero()) continue;
    UPoly fy = f.specialize_x(x0);
    UPoly gy = g.specialize_x(x0);
    xs.push_back(x0);
    ys.push_back(uresultant(fy, gy));
  }
  return uinterpolate(xs, ys);
}

inline UPoly discriminant_y(const BivariatePolynomial& f) {
  return resultant_y(f, f.derivative_y());
}

/// True iff f is squarefree over Q(i)[x,y]. Decomposes f into its
/// y-free content and primitive part; each must be squarefree, and the
/// primitive part is squarefree iff its y-discriminant is not identically 0.
inline bool reducedness_check(const BivariatePolynomial& f) {
  if (f.is_zero()) throw ZeroPolynomial();
  if (f.deg_y() <= 0) {
    auto cs = f.y_coefficients();
    return uis_squarefree(cs.empty() ? UPoly{} : cs[0]);
  }
  UPoly c = content_x(f);
  if (!uis_squarefree(c)) return false;
  BivariatePolynomial prim = udeg(c) > 0 ? divide_by_content(f, c) : f;
  UPoly disc = discriminant_y(prim);
  return !uis_zero(disc);
}

// ---------------------------------------------------------------------------
// Critical values.
// ---------------------------------------------------------------------------

struct CriticalValue {
  std::complex<double> z;
  double radius;  // certified error radius
};

struct CriticalSet {
  std::vector<CriticalValue> points;
  int size() const { return static_cast<int>(points.size()); }
};

/// Distinct roots of Disc_y(f) = Res_y(f, df/dy). The exact squarefree part
/// is extracted first, so the numeric solve only ever sees simple roots;
/// a cluster collapse pass remains as a safety net for near-degenerate input.
inline CriticalSet critical_values(const BivariatePolynomial& f, double tol,
                                   double cluster_ratio = 10.0) {
  UPoly disc = discriminant_y(f);
  if (uis_zero(disc)) throw DiscriminantIdenticallyZero();
  UPoly sf = umonic(usquarefree_part(disc));
  CriticalSet X;
  if (udeg(sf) < 1) return X;  // no critical values: disc is a nonzero constant

  CertifiedRoots rr = roots_univariate(uto_complex(sf), tol);

  double scale = 1.0;
  for (auto& z : rr.roots) scale = std::max(scale, std::abs(z));
  Clustering cl = single_linkage_clusters(rr.roots, cluster_ratio, scale);
  for (auto& g : cl.groups) {
    std::complex<double> mean;
    double rad = 0.0;
    for (int idx : g) mean += rr.roots[static_cast<std::size_t>(idx)];
    mean /= static_cast<double>(g.size());
    for (int idx : g)
      rad = std::max(rad, std::abs(rr.roots[static_cast<std::size_t>(idx)] - mean) +
                              rr.radii[static_cast<std::size_t>(idx)]);
    X.points.push_back({mean, rad});
  }
  std::sort(X.points.begin(), X.points.end(), [](const CriticalValue& a, const CriticalValue& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });

  for (std::size_t i = 0; i < X.points.size(); ++i)
    for (std::size_t j = i + 1; j < X.points.size(); ++j) {
      double sep = std::abs(X.points[i].z - X.points[j].z);
      if (!(sep > 2.0 * (X.points[i].radius + X.points[j].radius)))
        throw Error("critical values not separated beyond certification radii");
    }
  return X;
}

// ---------------------------------------------------------------------------
// Genericity.
// ---------------------------------------------------------------------------

struct FiberReport {
  bool one_cluster = false;
  int cluster_size = 0;       // m_i candidate at this critical value
  bool simple_tangency = true;  // cluster size exactly 2
};

struct GenericityReport {
  bool leading_ok = false;    // (a) deg_y f = n with constant leading coefficient
  bool distinct_ok = false;   // (b) critical values pairwise distinct
  std::vector<FiberReport> fibers;  // (c) per critical value
  bool all_simple = true;     // informational; never fatal

  bool fibers_ok() const {
    for (auto& fr : fibers)
      if (!fr.one_cluster) return false;
    return true;
  }
  bool pass() const { return leading_ok && distinct_ok && fibers_ok(); }
};

inline bool leading_coefficient_ok(const BivariatePolynomial& f) {
  int n = f.degree();
  if (f.deg_y() != n) return false;
  auto cs = f.y_coefficients();
  const UPoly& lead = cs.back();
  return udeg(lead) == 0 && !uis_zero(lead);
}

inline GenericityReport genericity_check(const BivariatePolynomial& f, const CriticalSet& X,
                                         double cluster_ratio = 10.0) {
  GenericityReport rep;
  rep.leading_ok = leading_coefficient_ok(f);

  rep.distinct_ok = true;
  for (std::size_t i = 0; i < X.points.size() && rep.distinct_ok; ++i)
    for (std::size_t j = i + 1; j < X.points.size(); ++j)
      if (!(std::abs(X.points[i].z - X.points[j].z) >
            2.0 * (X.points[i].radius + X.points[j].radius))) {
        rep.distinct_ok = false;
        break;
      }

  int n = f.degree();
  auto cs = f.y_coefficients();
  for (auto& p : X.points) {
    FiberReport fr;
    // Specialize f at the critical value in floating point.
    std::vector<std::complex<double>> fiber(static_cast<std::size_t>(n) + 1);
    bool ok = rep.leading_ok;
    if (ok) {
      for (int j = 0; j <= n; ++j)
        fiber[static_cast<std::size_t>(j)] =
            j < static_cast<int>(cs.size()) ? ueval_complex(cs[static_cast<std::size_t>(j)], p.z)
                                            : std::complex<double>(0);
      CertifiedRoots rr = solve_univariate(fiber);
      double scale = 1.0;
      for (auto& z : rr.roots) scale = std::max(scale, std::abs(z));
      Clustering cl = single_linkage_clusters(rr.roots, cluster_ratio, scale);
      int multi = 0;
      for (auto& g : cl.groups)
        if (g.size() >= 2) {
          ++multi;
          fr.cluster_size = static_cast<int>(g.size());
        }
      fr.one_cluster = (multi == 1);
      fr.simple_tangency = fr.cluster_size == 2;
    }
    if (!fr.simple_tangency) rep.all_simple = false;
    rep.fibers.push_back(fr);
  }
  return rep;
}

/// Deterministic shear ladder: t = 0, 1, -1, 2, -2, ... until the curve
/// passes genericity or the cap aborts.
struct GenericModel {
  BivariatePolynomial f;  // possibly sheared
  Rational shear_t;       // 0 when no shear was needed
  CriticalSet X;
  GenericityReport report;
  int attempts = 0;
};

inline GenericModel prepare_generic(const BivariatePolynomial& input, double tol,
                                    double cluster_ratio = 10.0, int retry_cap = 20,
                                    bool allow_shear = true) {
  if (!reducedness_check(input)) throw Error("polynomial is not reduced (repeated factor)");
  for (int attempt = 0; attempt <= retry_cap; ++attempt) {
    Rational t = attempt == 0 ? Rational(0)
                              : (attempt % 2 == 1 ? Rational((attempt + 1) / 2)
                                                  : Rational(-(attempt / 2)));
    GenericModel m;
    m.f = shear(input, t);
    m.shear_t = t;
    m.attempts = attempt + 1;
    if (!leading_coefficient_ok(m.f)) {
      if (!allow_shear) {
        m.report.leading_ok = false;
        return m;
      }
      continue;
    }
    m.X = critical_values(m.f, tol, cluster_ratio);
    m.report = genericity_check(m.f, m.X, cluster_ratio);
    if (m.report.pass()) return m;
    if (!allow_shear) return m;
  }
  throw GenericityExhausted("no generic projection found within the shear retry cap");
}

}  // namespace curvetop
