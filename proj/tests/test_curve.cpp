#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "curvetop/curve.hpp"

using namespace curvetop;

namespace {

// Independent resultant oracle: Sylvester matrix determinant over Q(i) by
// fraction-free Gaussian elimination (Bareiss). The library computes Res_y
// by specialization and interpolation; the two routes must agree.
GaussianRational sylvester_resultant(const UPoly& f, const UPoly& g) {
  int m = udeg(f), n = udeg(g);
  if (m < 0 || n < 0) return GaussianRational();
  int size = m + n;
  if (size == 0) return GaussianRational(Rational(1));
  std::vector<std::vector<GaussianRational>> s(static_cast<std::size_t>(size),
                                               std::vector<GaussianRational>(static_cast<std::size_t>(size)));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c <= m; ++c) s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + c)] = f[static_cast<std::size_t>(m - c)];
  for (int r = 0; r < m; ++r)
    for (int c = 0; c <= n; ++c) s[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + c)] = g[static_cast<std::size_t>(n - c)];

  GaussianRational det(Rational(1));
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int r = col; r < size; ++r)
      if (!s[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return GaussianRational();
    if (pivot != col) {
      std::swap(s[static_cast<std::size_t>(pivot)], s[static_cast<std::size_t>(col)]);
      det = -det;
    }
    GaussianRational p = s[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    det *= p;
    for (int r = col + 1; r < size; ++r) {
      GaussianRational factor = s[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / p;
      for (int c = col; c < size; ++c)
        s[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            factor * s[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
    }
  }
  return det;
}

GaussianRational discriminant_oracle_at(const BivariatePolynomial& f, long x0) {
  UPoly fy = f.specialize_x(GaussianRational(Rational(x0)));
  UPoly gy = f.derivative_y().specialize_x(GaussianRational(Rational(x0)));
  return sylvester_resultant(fy, gy);
}

bool contains_point(const CriticalSet& X, std::complex<double> z, double tol = 1e-7) {
  for (auto& p : X.points)
    if (std::abs(p.z - z) < tol) return true;
  return false;
}

}  // namespace

TEST_CASE("discriminant agrees with the Sylvester oracle") {
  for (const char* text :
       {"x^2 - y^2", "(x+y)*(x-y)*(y-1)", "x^3 + y^3 - 1", "x^2 - y^3",
        "y^2 - x^3 - x^2 + i*x*y", "x^3 - y^4 + 1/2*x*y"}) {
    auto f = parse_polynomial(text);
    UPoly disc = discriminant_y(f);
    for (long x0 : {0L, 1L, -2L, 3L, 5L, -7L}) {
      GaussianRational via_lib = ueval(disc, GaussianRational(Rational(x0)));
      GaussianRational via_sylvester = discriminant_oracle_at(f, x0);
      REQUIRE(via_lib == via_sylvester);
    }
  }
}

TEST_CASE("critical values of the node") {
  auto f = parse_polynomial("x^2 - y^2");
  CriticalSet X = critical_values(f, 1e-9);
  REQUIRE(X.size() == 1);
  REQUIRE(contains_point(X, {0, 0}));
}

TEST_CASE("critical values of three generic lines") {
  auto f = parse_polynomial("(x+y)*(x-y)*(y-1)");
  CriticalSet X = critical_values(f, 1e-9);
  REQUIRE(X.size() == 3);
  REQUIRE(contains_point(X, {-1, 0}));
  REQUIRE(contains_point(X, {0, 0}));
  REQUIRE(contains_point(X, {1, 0}));
}

TEST_CASE("critical values of the Fermat cubic are the cube roots of unity") {
  auto f = parse_polynomial("x^3 + y^3 - 1");
  CriticalSet X = critical_values(f, 1e-9);
  REQUIRE(X.size() == 3);
  double c = std::cos(2.0943951023931953), s = std::sin(2.0943951023931953);
  REQUIRE(contains_point(X, {1, 0}));
  REQUIRE(contains_point(X, {c, s}));
  REQUIRE(contains_point(X, {c, -s}));
}

TEST_CASE("discriminant of a non-reduced polynomial vanishes identically") {
  auto f = parse_polynomial("(x - y)^2");
  REQUIRE_THROWS_AS(critical_values(f, 1e-9), DiscriminantIdenticallyZero);
}

TEST_CASE("tightening the tolerance reproduces the critical set") {
  for (const char* text : {"(x+y)*(x-y)*(y-1)", "x^3 + y^3 - 1", "x^2 - y^3"}) {
    auto f = parse_polynomial(text);
    CriticalSet coarse = critical_values(f, 1e-7);
    CriticalSet fine = critical_values(f, 1e-8);
    REQUIRE(coarse.size() == fine.size());
    for (int i = 0; i < coarse.size(); ++i) {
      double r = std::max(coarse.points[static_cast<std::size_t>(i)].radius, 1e-12);
      REQUIRE(std::abs(coarse.points[static_cast<std::size_t>(i)].z -
                       fine.points[static_cast<std::size_t>(i)].z) <= r + 1e-12);
    }
  }
}

TEST_CASE("resultant is nonzero away from the critical set") {
  auto f = parse_polynomial("(x+y)*(x-y)*(y-1)");
  UPoly disc = discriminant_y(f);
  for (long x0 : {2L, -3L, 7L})
    REQUIRE_FALSE(ueval(disc, GaussianRational(Rational(x0))).is_zero());
  for (long x0 : {-1L, 0L, 1L})
    REQUIRE(ueval(disc, GaussianRational(Rational(x0))).is_zero());
}

TEST_CASE("genericity report for the node") {
  auto f = parse_polynomial("x^2 - y^2");
  CriticalSet X = critical_values(f, 1e-9);
  GenericityReport rep = genericity_check(f, X);
  REQUIRE(rep.leading_ok);
  REQUIRE(rep.distinct_ok);
  REQUIRE(rep.fibers_ok());
  REQUIRE(rep.pass());
  REQUIRE(rep.all_simple);
  REQUIRE(rep.fibers[0].cluster_size == 2);
}

TEST_CASE("vertical component fails the leading-coefficient condition") {
  auto f = parse_polynomial("x*y");
  REQUIRE_FALSE(leading_coefficient_ok(f));
  GenericityReport rep = genericity_check(f, CriticalSet{});
  REQUIRE_FALSE(rep.leading_ok);
}

TEST_CASE("two singularities over one fiber fail the cluster condition") {
  // Four lines whose nodes at (0,1) and (0,-3) share the fiber x = 0; the
  // cross intersections add critical values at -2 and 2.
  auto f = parse_polynomial("((y-1)^2 - x^2)*((y+3)^2 - x^2)");
  REQUIRE(reducedness_check(f));
  CriticalSet X = critical_values(f, 1e-9);
  REQUIRE(X.size() == 3);
  GenericityReport rep = genericity_check(f, X);
  REQUIRE(rep.leading_ok);
  REQUIRE_FALSE(rep.fibers[1].one_cluster);  // x = 0 holds two clusters
  REQUIRE(rep.fibers[0].one_cluster);
  REQUIRE(rep.fibers[2].one_cluster);
  REQUIRE_FALSE(rep.pass());
}

TEST_CASE("tangent parabolas pass the cluster condition after shearing") {
  auto m = prepare_generic(parse_polynomial("(y - x^2)*(y + x^2)"), 1e-8);
  REQUIRE(m.report.pass());
  REQUIRE(m.shear_t != 0);
  REQUIRE(m.f.degree() == 4);
  REQUIRE(m.f.deg_y() == 4);
  for (auto& fr : m.report.fibers) REQUIRE(fr.one_cluster);
}

TEST_CASE("higher tangency is reported but not fatal") {
  auto m = prepare_generic(parse_polynomial("x^3 + y^3 - 1"), 1e-8);
  REQUIRE(m.report.pass());
  REQUIRE_FALSE(m.report.all_simple);  // the Fermat tangency has order 3
  for (auto& fr : m.report.fibers) REQUIRE(fr.cluster_size == 3);
}

TEST_CASE("shear ladder restores genericity for x*y") {
  auto m = prepare_generic(parse_polynomial("x*y"), 1e-8);
  REQUIRE(m.report.pass());
  REQUIRE(m.shear_t == Rational(1));
  REQUIRE(m.f == parse_polynomial("x*y + y^2"));
}

TEST_CASE("non-reduced input is rejected by the pipeline entry") {
  REQUIRE_THROWS_AS(prepare_generic(parse_polynomial("(x - y)^2"), 1e-8), Error);
}
