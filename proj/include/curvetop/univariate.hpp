#pragma once

#include <algorithm>
#include <cassert>
#include <complex>
#include <vector>

#include "curvetop/errors.hpp"
#include "curvetop/gaussian_rational.hpp"

namespace curvetop {

/// Dense univariate polynomial over Q(i), coefficients in ascending degree.
/// The zero polynomial is the empty vector.
using UPoly = std::vector<GaussianRational>;

inline void utrim(UPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline int udeg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }
inline bool uis_zero(const UPoly& p) { return p.empty(); }

inline UPoly uadd(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  utrim(r);
  return r;
}

inline UPoly usub(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  utrim(r);
  return r;
}

inline UPoly umul(const UPoly& a, const UPoly& b) {
  if (uis_zero(a) || uis_zero(b)) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  utrim(r);
  return r;
}

inline UPoly uscale(const UPoly& a, const GaussianRational& c) {
  if (c.is_zero()) return {};
  UPoly r = a;
  for (auto& x : r) x *= c;
  return r;
}

inline UPoly uderiv(const UPoly& p) {
  if (p.size() <= 1) return {};
  UPoly r(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * GaussianRational(Rational(i));
  utrim(r);
  return r;
}

inline GaussianRational ueval(const UPoly& p, const GaussianRational& x) {
  GaussianRational acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Quotient and remainder over the field Q(i).
inline std::pair<UPoly, UPoly> udivmod(const UPoly& a, const UPoly& b) {
  assert(!uis_zero(b));
  UPoly rem = a, quot;
  int db = udeg(b);
  if (udeg(a) >= db) quot.assign(a.size() - b.size() + 1, GaussianRational());
  const GaussianRational& lead = b.back();
  while (udeg(rem) >= db) {
    int k = udeg(rem) - db;
    GaussianRational c = rem.back() / lead;
    quot[k] = c;
    for (int i = 0; i <= db; ++i) rem[k + i] -= c * b[i];
    utrim(rem);
  }
  utrim(quot);
  return {quot, rem};
}

inline UPoly udiv_exact(const UPoly& a, const UPoly& b) {
  auto [q, r] = udivmod(a, b);
  assert(uis_zero(r));
  return q;
}

inline UPoly umonic(const UPoly& p) {
  if (uis_zero(p)) return p;
  return uscale(p, GaussianRational(Rational(1)) / p.back());
}

inline UPoly ugcd(UPoly a, UPoly b) {
  utrim(a);
  utrim(b);
  while (!uis_zero(b)) {
    auto [q, r] = udivmod(a, b);
    a = std::move(b);
    b = std::move(r);
    b = umonic(b);
  }
  return umonic(a);
}

/// p with all repeated roots collapsed to simple ones: p / gcd(p, p').
inline UPoly usquarefree_part(const UPoly& p) {
  if (udeg(p) < 1) return p;
  UPoly g = ugcd(p, uderiv(p));
  if (udeg(g) < 1) return p;
  return udiv_exact(p, g);
}

inline bool uis_squarefree(const UPoly& p) {
  if (udeg(p) < 1) return true;
  return udeg(ugcd(p, uderiv(p))) < 1;
}

/// Resultant of two univariate polynomials over Q(i) via the Euclidean
/// remainder sequence.
inline GaussianRational uresultant(UPoly f, UPoly g) {
  utrim(f);
  utrim(g);
  if (uis_zero(f) || uis_zero(g)) return GaussianRational();
  GaussianRational acc(Rational(1));
  while (true) {
    int m = udeg(f), n = udeg(g);
    if (n == 0) {
      GaussianRational c = g[0], p(Rational(1));
      for (int i = 0; i < m; ++i) p *= c;
      return acc * p;
    }
    auto [q, r] = udivmod(f, g);
    if (uis_zero(r)) return GaussianRational();
    int d = udeg(r);
    if ((static_cast<long>(m) * n) % 2 == 1) acc = -acc;
    GaussianRational lg = g.back(), p(Rational(1));
    for (int i = 0; i < m - d; ++i) p *= lg;
    acc *= p;
    f = std::move(g);
    g = std::move(r);
  }
}

/// Interpolating polynomial through (xs[k], ys[k]), pairwise distinct xs.
inline UPoly uinterpolate(const std::vector<GaussianRational>& xs,
                          const std::vector<GaussianRational>& ys) {
  assert(xs.size() == ys.size());
  // Newton's divided differences keep the intermediate sizes modest.
  std::size_t m = xs.size();
  std::vector<GaussianRational> coef(ys);
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = m - 1; i >= j; --i) {
      coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  UPoly acc;
  for (std::size_t i = m; i-- > 0;) {
    // acc = acc*(x - xs[i]) + coef[i]
    UPoly shifted = umul(acc, UPoly{-xs[i], GaussianRational(Rational(1))});
    acc = uadd(shifted, UPoly{coef[i]});
  }
  utrim(acc);
  return acc;
}

inline std::complex<double> ueval_complex(const UPoly& p, std::complex<double> x) {
  std::complex<double> acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + it->to_complex();
  return acc;
}

inline std::vector<std::complex<double>> uto_complex(const UPoly& p) {
  std::vector<std::complex<double>> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i].to_complex();
  return r;
}

}  // namespace curvetop
