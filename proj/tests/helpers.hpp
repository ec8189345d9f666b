#pragma once

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curvetop/braid.hpp"
#include "curvetop/extract.hpp"
#include "curvetop/pipeline.hpp"
#include "curvetop/tracking.hpp"

namespace testutil {

using namespace curvetop;

/// Regression corpus. euler_complement stores 1 - chi(C), computed by hand:
///   chi of an affine curve = chi(normalization) - (glued points lost),
///   normalizations of the cuspidal members are C (chi = 1), lines are C,
///   Fermat n is the degree-n projective curve minus its n points at
///   infinity: chi = 2 - (n-1)(n-2) - n.
struct CorpusEntry {
  const char* curve;
  int n;                   // degree after any shear
  int euler_complement;    // 1 - chi(C)
  int h1_rank;             // number of irreducible components
  bool needs_shear;
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c = {
      // chi(C): two lines crossing once = 1 + 1 - 1 = 1
      {"x^2 - y^2", 2, 0, 2, false},
      // cuspidal cubic, normalization C: chi = 1
      {"x^2 - y^3", 3, 0, 1, false},
      // quintic cusp t -> (t^5, t^2): chi = 1
      {"x^2 - y^5", 5, 0, 1, false},
      // three concurrent lines: chi = 3 - 3 + 1 = 1
      {"x^3 - y^3", 3, 0, 3, false},
      // t -> (t^4, t^3): chi = 1
      {"x^3 - y^4", 4, 0, 1, false},
      // three generic lines: chi = 3 - 3 = 0
      {"(x+y)*(x-y)*(y-1)", 3, 1, 3, false},
      // affine conic = C*: chi = 0
      {"x^2 + y^2 - 1", 2, 1, 1, false},
      // Fermat 3: chi = 2 - 2*1 - 3 = -3
      {"x^3 + y^3 - 1", 3, 4, 1, false},
      // Fermat 4: chi = 2 - 3*2 - 4 = -8
      {"x^4 + y^4 - 1", 4, 9, 1, false},
      // nodal cubic: normalization P^1 minus 1 pt at infinity... chi(affine
      // nodal cubic) = chi(projective, = 1) - 1 = 0
      {"y^2 - x^3 - x^2", 3, 1, 1, true},
      // two parabolas tangent at the origin: chi = 1 + 1 - 1 = 1
      {"(y - x^2)*(y + x^2)", 4, 0, 2, true},
      // two lines: chi = 1
      {"x*y", 2, 0, 2, true},
      // four lines in two parallel pairs, four nodes: chi = 4 - 4 = 0
      {"((y-1)^2 - x^2)*((y+3)^2 - x^2)", 4, 1, 4, true},
  };
  return c;
}

inline Braid brieskorn_braid(int p, int q) {
  Braid b(q);
  for (int rep = 0; rep < p; ++rep)
    for (int k = 1; k < q; ++k) b.word.push_back(k);
  return b;
}

/// Synthetic strand movie that straightens a circular root constellation
/// into a collinear one: angles shrink to zero while radii spread by the
/// descending-angle rank, so no two strands ever meet. Extracting its braid
/// gives the explicit change of marking between the geometric rotation braid
/// and the textbook (sigma_1 ... sigma_{q-1})^p form.
inline StrandTrajectory straightening_movie(const std::vector<Complex>& cfg0) {
  const double two_pi = 6.283185307179586476925286766559;
  int n = static_cast<int>(cfg0.size());
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  auto ang = [&](Complex z) {
    double a = std::arg(z);
    if (a < 0) a += two_pi;
    return a;
  };
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return ang(cfg0[static_cast<std::size_t>(a)]) > ang(cfg0[static_cast<std::size_t>(b)]);
  });
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) rank[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] = k;

  StrandTrajectory tr;
  tr.n = n;
  const int steps = 4096;
  for (int s = 0; s <= steps; ++s) {
    double t = static_cast<double>(s) / steps;
    std::vector<Complex> row(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      double rho = std::abs(cfg0[static_cast<std::size_t>(r)]) *
                   (1.0 + 0.5 * t * (rank[static_cast<std::size_t>(r)] + 1));
      double a = ang(cfg0[static_cast<std::size_t>(r)]) * (1.0 - t);
      row[static_cast<std::size_t>(r)] = rho * Complex(std::cos(a), std::sin(a));
    }
    tr.times.push_back(t);
    tr.positions.push_back(row);
  }
  return tr;
}

/// C with C^-1 (local braid) C = B_{p,q}: the braid of the straightening
/// movie started at the given loop-base configuration.
inline Braid straightening_conjugator(const std::vector<Complex>& loop_start_config) {
  StrandTrajectory movie = straightening_movie(loop_start_config);
  return braid_from_trajectory(movie);
}

inline Braid random_braid(std::mt19937& rng, int n, int max_len) {
  Braid b(n);
  int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
  for (int i = 0; i < len; ++i) {
    int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    b.word.push_back(rng() % 2 ? k : -k);
  }
  return b;
}

inline FreeWord random_free_word(std::mt19937& rng, int n, int max_len) {
  FreeWord w(n);
  int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
  for (int i = 0; i < len; ++i) {
    int j = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    w.push(rng() % 2 ? j : -j);
  }
  return w;
}

inline RunConfig config_for(const std::string& curve) {
  RunConfig cfg;
  cfg.curve = curve;
  return cfg;
}

}  // namespace testutil
