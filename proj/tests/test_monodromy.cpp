#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "helpers.hpp"

using namespace curvetop;
using testutil::brieskorn_braid;
using testutil::straightening_conjugator;

namespace {

MonodromyData assemble_curve(const std::string& text, TrackingConfig cfg = {}) {
  auto m = prepare_generic(parse_polynomial(text), cfg.tol);
  ArcSystem arcs = build_arc_system(m.X);
  return assemble(m.f, m.X, arcs, cfg);
}

bool arcs_disjoint(const ArcSystem& sys) {
  using exact::Pt;
  Pt p0(sys.p0);
  for (std::size_t i = 0; i < sys.arcs.size(); ++i)
    for (std::size_t j = i + 1; j < sys.arcs.size(); ++j) {
      const SystemArc& a = sys.arcs[i];
      const SystemArc& b = sys.arcs[j];
      Pt aw(a.waypoint), ae(a.endpoint), bw(b.waypoint), be(b.endpoint);
      if (exact::segments_intersect_except_at(p0, aw, p0, bw, p0)) return false;
      if (exact::segments_intersect(p0, aw, bw, be)) return false;
      if (exact::segments_intersect(aw, ae, p0, bw)) return false;
      if (exact::segments_intersect(aw, ae, bw, be)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("single critical value gives a straight arc") {
  auto f = parse_polynomial("x^2 - y^2");
  CriticalSet X = critical_values(f, 1e-9);
  ArcSystem sys = build_arc_system(X);
  REQUIRE(sys.p0 == Complex(1, 0));
  REQUIRE(sys.arcs.size() == 1);
  // waypoint and endpoint lie on the real segment toward 0
  REQUIRE(std::abs(sys.arcs[0].waypoint.imag()) < 1e-12);
  REQUIRE(std::abs(sys.arcs[0].endpoint - Complex(0.25, 0)) < 1e-12);
}

TEST_CASE("three collinear critical values produce a non-crossing system") {
  auto f = parse_polynomial("(x+y)*(x-y)*(y-1)");
  CriticalSet X = critical_values(f, 1e-9);
  ArcSystem sys = build_arc_system(X);
  REQUIRE(sys.arcs.size() == 3);
  REQUIRE(arcs_disjoint(sys));
  REQUIRE(sys.order.size() == 3);
  // determinism
  ArcSystem again = build_arc_system(X);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(sys.arcs[static_cast<std::size_t>(i)].waypoint ==
            again.arcs[static_cast<std::size_t>(i)].waypoint);
    REQUIRE(sys.arcs[static_cast<std::size_t>(i)].endpoint ==
            again.arcs[static_cast<std::size_t>(i)].endpoint);
  }
}

TEST_CASE("cube roots of unity produce a non-crossing system") {
  auto f = parse_polynomial("x^3 + y^3 - 1");
  CriticalSet X = critical_values(f, 1e-9);
  ArcSystem sys = build_arc_system(X);
  REQUIRE(sys.arcs.size() == 3);
  REQUIRE(arcs_disjoint(sys));
}

TEST_CASE("Brieskorn local monodromy equals B_pq after straightening") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
    std::ostringstream text;
    text << "x^" << p << " - y^" << q;
    auto f = parse_polynomial(text.str());
    CriticalSet X = critical_values(f, 1e-9);
    ArcSystem arcs = build_arc_system(X);
    auto local = local_monodromy(f, 0, arcs, X);
    REQUIRE(local.m == q);

    CurveEvaluator ev(f);
    auto base = fiber_roots(ev, arcs.p0);
    auto tr = track(ev, arcs.arcs[0].path, base);
    Braid c = straightening_conjugator(tr.final());
    Braid straightened = compose(compose(c.inverse(), local.local), c);
    REQUIRE(braids_equal(straightened, brieskorn_braid(p, q)));
    // q <= 3 rotations agree with the textbook word on the nose
    REQUIRE(braids_equal(local.local, brieskorn_braid(p, q)));
  }
}

TEST_CASE("three-lines local monodromies are double half-twists") {
  MonodromyData md = assemble_curve("(x+y)*(x-y)*(y-1)");
  REQUIRE(md.locals.size() == 3);
  for (const LocalMonodromy& lm : md.locals) {
    REQUIRE(lm.m == 2);
    REQUIRE(exponent_sum(lm.local) == 2);
    // a full twist of the node pair brings every strand home
    REQUIRE(is_identity_permutation(permutation(lm.local)));
    REQUIRE_FALSE(braids_equal(lm.local, Braid(3)));
  }
}

TEST_CASE("transport along the straight real arc of the node is empty") {
  auto f = parse_polynomial("x^2 - y^2");
  CriticalSet X = critical_values(f, 1e-9);
  ArcSystem arcs = build_arc_system(X);
  Braid t = transport_braid(f, 0, arcs);
  REQUIRE(t.word.empty());
}

TEST_CASE("reversed transport gives the inverse braid") {
  auto f = parse_polynomial("(x+y)*(x-y)*(y-1)");
  CriticalSet X = critical_values(f, 1e-9);
  ArcSystem arcs = build_arc_system(X);
  CurveEvaluator ev(f);
  auto base = fiber_roots(ev, arcs.p0);
  for (int i = 0; i < 3; ++i) {
    auto fwd = track(ev, arcs.arcs[static_cast<std::size_t>(i)].path, base);
    auto back = track(ev, arcs.arcs[static_cast<std::size_t>(i)].path.reversed(), fwd.final());
    double theta = select_phase({&fwd, &back});
    Braid a = extract_with_phase(fwd, theta);
    Braid b = extract_with_phase(back, theta);
    REQUIRE(compose(a, b).normalized().word.empty());
  }
}

TEST_CASE("assemble on the node") {
  MonodromyData md = assemble_curve("x^2 - y^2");
  REQUIRE(md.n == 2);
  REQUIRE(md.X.size() == 1);
  REQUIRE(md.locals[0].m == 2);
  REQUIRE(md.locals[0].relator_labels == std::vector<int>{0});
  REQUIRE(md.locals[0].local.word == std::vector<int>{1, 1});
}

TEST_CASE("assemble on three generic lines") {
  MonodromyData md = assemble_curve("(x+y)*(x-y)*(y-1)");
  REQUIRE(md.n == 3);
  REQUIRE(md.X.size() == 3);
  int total_relators = 0;
  for (auto& lm : md.locals) {
    REQUIRE(lm.m == 2);
    total_relators += static_cast<int>(lm.relator_labels.size());
  }
  REQUIRE(total_relators == 3);
}

TEST_CASE("assemble on the Fermat cubic") {
  MonodromyData md = assemble_curve("x^3 + y^3 - 1");
  REQUIRE(md.n == 3);
  REQUIRE(md.X.size() == 3);
  int total_relators = 0;
  for (auto& lm : md.locals) {
    REQUIRE(lm.m == 3);
    total_relators += static_cast<int>(lm.relator_labels.size());
  }
  REQUIRE(total_relators == 6);
}

TEST_CASE("the global braid matches an independently tracked full loop") {
  for (const char* text : {"x^2 - y^2", "(x+y)*(x-y)*(y-1)"}) {
    auto f = parse_polynomial(text);
    CriticalSet X = critical_values(f, 1e-9);
    ArcSystem arcs = build_arc_system(X);
    MonodromyData md = assemble(f, X, arcs);
    CurveEvaluator ev(f);
    auto base = fiber_roots(ev, arcs.p0);
    for (int i = 0; i < X.size(); ++i) {
      const SystemArc& arc = arcs.arcs[static_cast<std::size_t>(i)];
      Complex center = X.points[static_cast<std::size_t>(i)].z;
      PathSpec gamma = arc.path
                           .then(PathSpec::full_circle_ccw(center, arc.disk_radius,
                                                           std::arg(arc.endpoint - center)))
                           .then(arc.path.reversed());
      auto traj = track(ev, gamma, base);
      double theta = select_phase({&traj});
      std::vector<int> check = tilted_order(base, theta);
      bool sorted = true;
      for (int k = 0; k < md.n; ++k) sorted = sorted && check[static_cast<std::size_t>(k)] == k;
      REQUIRE(sorted);
      Braid direct = extract_with_phase(traj, theta);
      REQUIRE(braids_equal(direct, md.at(i).global));
    }
  }
}

TEST_CASE("permutation orbits count irreducible factors") {
  std::map<std::string, int> factors = {
      {"x^2 - y^2", 2}, {"(x+y)*(x-y)*(y-1)", 3}, {"x^3 + y^3 - 1", 1}, {"x^2 - y^3", 1}};
  for (auto& [text, k] : factors) {
    MonodromyData md = assemble_curve(text);
    std::vector<int> parent(static_cast<std::size_t>(md.n));
    for (int i = 0; i < md.n; ++i) parent[static_cast<std::size_t>(i)] = i;
    std::function<int(int)> find = [&](int a) {
      while (parent[static_cast<std::size_t>(a)] != a) a = parent[static_cast<std::size_t>(a)];
      return a;
    };
    for (auto& lm : md.locals) {
      auto perm = permutation(lm.global);
      for (int j = 0; j < md.n; ++j) {
        int a = find(j), b = find(perm[static_cast<std::size_t>(j)]);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
      }
    }
    int orbits = 0;
    for (int j = 0; j < md.n; ++j)
      if (find(j) == j) ++orbits;
    REQUIRE(orbits == k);
  }
}

TEST_CASE("monodromy at infinity is the full twist for transverse curves") {
  for (const char* text : {"x^2 + y^2 - 1", "x^3 + y^3 - 1", "(x+y)*(x-y)*(y-1)"}) {
    MonodromyData md = assemble_curve(text);
    REQUIRE(transverse_at_infinity(md.f));
    REQUIRE(braids_equal(monodromy_at_infinity(md), full_twist(md.n)));
  }
}

TEST_CASE("the cuspidal cubic is tangent to infinity and misses the full twist") {
  MonodromyData md = assemble_curve("x^2 - y^3");
  REQUIRE_FALSE(transverse_at_infinity(md.f));
  Braid inf = monodromy_at_infinity(md);
  REQUIRE_FALSE(braids_equal(inf, full_twist(md.n)));
  REQUIRE(exponent_sum(inf) == 4);  // B_{2,3} has exponent sum 4

  TrackingConfig fine;
  fine.step_initial /= 8;
  MonodromyData md_fine = assemble_curve("x^2 - y^3", fine);
  REQUIRE(monodromy_at_infinity(md_fine).normalized().word == inf.normalized().word);
}

TEST_CASE("shrinking every disk by half preserves the local data") {
  auto f = parse_polynomial("(x+y)*(x-y)*(y-1)");
  CriticalSet X = critical_values(f, 1e-9);
  ArcSystem arcs = build_arc_system(X);
  MonodromyData md = assemble(f, X, arcs);

  ArcSystem shrunk = arcs;
  for (auto& a : shrunk.arcs) {
    Complex center = X.points[static_cast<std::size_t>(a.index)].z;
    a.disk_radius *= 0.5;
    a.endpoint = center + (a.endpoint - center) * 0.5;
    a.path = PathSpec::polyline({shrunk.p0, a.waypoint, a.endpoint});
  }
  MonodromyData md2 = assemble(f, X, shrunk);
  for (int i = 0; i < X.size(); ++i) {
    REQUIRE(md2.at(i).m == md.at(i).m);
    REQUIRE(braids_equal(md2.at(i).local, md.at(i).local));
  }
}
