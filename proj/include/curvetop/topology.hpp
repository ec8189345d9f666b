#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "curvetop/braid.hpp"
#include "curvetop/monodromy.hpp"

namespace curvetop {

// ---------------------------------------------------------------------------
// Handle decomposition.
// ---------------------------------------------------------------------------

/// A 0-framed 2-handle attaching circle: encircles the (k, k+1) strand pair
/// inside the collapse cluster at p'_i, transported outside U_i along s_i.
struct AttachingCircle {
  int critical_index = 0;
  int k = 0;  // 1 <= k <= m_i - 1, pair (k, k+1) within the cluster
  int framing = 0;
  std::string placement;
};

struct HandleDecomposition {
  int zero_handles = 1;
  int one_handles = 0;                 // n
  std::vector<AttachingCircle> two_handles;  // sum of (m_i - 1)

  int two_handle_count() const { return static_cast<int>(two_handles.size()); }
};

inline HandleDecomposition handle_decomposition(const MonodromyData& md) {
  HandleDecomposition hd;
  hd.one_handles = md.n;
  for (const LocalMonodromy& lm : md.locals)
    for (int k = 1; k <= lm.m - 1; ++k) {
      AttachingCircle c;
      c.critical_index = lm.index;
      c.k = k;
      c.framing = 0;
      c.placement = "fiber over alpha3 outside U_" + std::to_string(lm.index) + " along s_" +
                    std::to_string(lm.index);
      hd.two_handles.push_back(c);
    }
  return hd;
}

/// Alternating handle count 1 - n + sum(m_i - 1); equals 1 - chi(C).
inline int euler_characteristic(const HandleDecomposition& hd) {
  return hd.zero_handles - hd.one_handles + hd.two_handle_count();
}

// ---------------------------------------------------------------------------
// Fundamental group presentation (Zariski-van Kampen form).
// ---------------------------------------------------------------------------

struct Relator {
  int critical_index = 0;
  int label = 0;                // base-fiber label j (0-based)
  std::vector<int> raw;         // beta_i . e_j concatenated with e_j^-1, unreduced
  FreeWord word;                // freely reduced
  bool trivial = false;         // empty after reduction; kept, flagged
};

struct Presentation {
  int generators = 0;  // e_1 .. e_n
  std::vector<Relator> relators;

  std::string str() const {
    std::string s = "<";
    for (int j = 1; j <= generators; ++j) s += (j > 1 ? "," : "") + std::string("e") + std::to_string(j);
    s += " | ";
    for (std::size_t r = 0; r < relators.size(); ++r)
      s += (r ? ", " : "") + relators[r].word.str();
    return s + ">";
  }
};

/// Relators beta_i . e_j = e_j for j in I_i, as words r = (beta_i . e_j) e_j^-1.
inline Presentation pi1_presentation(const MonodromyData& md) {
  Presentation p;
  p.generators = md.n;
  for (const LocalMonodromy& lm : md.locals)
    for (int label : lm.relator_labels) {
      Relator r;
      r.critical_index = lm.index;
      r.label = label;
      FreeWord image = artin_action(lm.global, FreeWord::generator(md.n, label + 1));
      r.raw = image.letters();
      r.raw.push_back(-(label + 1));
      r.word = image;
      r.word.push(-(label + 1));
      r.trivial = r.word.empty();
      p.relators.push_back(std::move(r));
    }
  return p;
}

// ---------------------------------------------------------------------------
// Abelianization via the Smith normal form over Z.
// ---------------------------------------------------------------------------

struct AbelianizationResult {
  int rank = 0;
  std::vector<long> torsion;  // invariant factors > 1
};

using BigInt = boost::multiprecision::cpp_int;

/// Smith normal form invariant factors of an integer matrix.
inline std::vector<BigInt> smith_invariant_factors(std::vector<std::vector<BigInt>> m) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<BigInt> factors;
  std::size_t r0 = 0, c0 = 0;
  while (r0 < rows && c0 < cols) {
    // Find the entry of least nonzero magnitude in the remaining block.
    std::size_t pr = r0, pc = c0;
    BigInt best = 0;
    for (std::size_t i = r0; i < rows; ++i)
      for (std::size_t j = c0; j < cols; ++j) {
        BigInt v = abs(m[i][j]);
        if (v != 0 && (best == 0 || v < best)) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    if (best == 0) break;
    std::swap(m[r0], m[pr]);
    for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pc]);

    bool clean = true;
    for (std::size_t i = r0 + 1; i < rows; ++i) {
      BigInt q = m[i][c0] / m[r0][c0];
      if (q != 0)
        for (std::size_t j = c0; j < cols; ++j) m[i][j] -= q * m[r0][j];
      if (m[i][c0] != 0) clean = false;
    }
    for (std::size_t j = c0 + 1; j < cols; ++j) {
      BigInt q = m[r0][j] / m[r0][c0];
      if (q != 0)
        for (std::size_t i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
      if (m[r0][j] != 0) clean = false;
    }
    if (!clean) continue;  // repeat with a smaller pivot

    factors.push_back(abs(m[r0][c0]));
    ++r0;
    ++c0;
  }
  // Enforce the divisibility chain d1 | d2 | ... .
  for (std::size_t i = 0; i + 1 < factors.size(); ++i)
    for (std::size_t j = i + 1; j < factors.size(); ++j) {
      BigInt a = factors[i], b = factors[j];
      BigInt g = gcd(a, b);
      factors[i] = g;
      factors[j] = a / g * b;
    }
  std::sort(factors.begin(), factors.end());
  return factors;
}

/// H_1 of the presented group: rank and nontrivial invariant factors of the
/// relator exponent matrix.
inline AbelianizationResult abelianization(const Presentation& p) {
  std::vector<std::vector<BigInt>> m;
  for (const Relator& r : p.relators) {
    std::vector<BigInt> row(static_cast<std::size_t>(p.generators), BigInt(0));
    for (int l : r.word.letters()) row[static_cast<std::size_t>(std::abs(l)) - 1] += l > 0 ? 1 : -1;
    m.push_back(std::move(row));
  }
  AbelianizationResult res;
  if (m.empty()) {
    res.rank = p.generators;
    return res;
  }
  std::vector<BigInt> factors = smith_invariant_factors(std::move(m));
  int nonzero = 0;
  for (const BigInt& f : factors)
    if (f != 0) ++nonzero;
  res.rank = p.generators - nonzero;
  for (const BigInt& f : factors)
    if (f > 1) res.torsion.push_back(f.convert_to<long>());
  return res;
}

/// Orbits of the subgroup generated by all permutation(beta_i): one orbit
/// per irreducible component of the curve.
inline int component_count(const MonodromyData& md) {
  int n = md.n;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a)
      a = parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
    return a;
  };
  for (const LocalMonodromy& lm : md.locals) {
    std::vector<int> perm = permutation(lm.global);
    for (int j = 0; j < n; ++j) {
      int a = find(j), b = find(perm[static_cast<std::size_t>(j)]);
      if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
  }
  int orbits = 0;
  for (int j = 0; j < n; ++j)
    if (find(j) == j) ++orbits;
  return orbits;
}

/// Optional cleanup pass: removes duplicate relators and substitutes away
/// generators killed by length-1 relators. Never used by the verification
/// path; free reduction is the only normalization applied there.
inline Presentation simplify(const Presentation& p) {
  Presentation out = p;
  // Substitute e_j -> 1 for every length-1 relator e_j^{+-1}.
  std::vector<bool> killed(static_cast<std::size_t>(p.generators) + 1, false);
  for (const Relator& r : out.relators)
    if (r.word.size() == 1) killed[static_cast<std::size_t>(std::abs(r.word.letters()[0]))] = true;
  std::vector<Relator> kept;
  std::vector<std::vector<int>> seen;
  for (Relator r : out.relators) {
    FreeWord w(p.generators);
    for (int l : r.word.letters())
      if (!killed[static_cast<std::size_t>(std::abs(l))]) w.push(l);
    r.word = w;
    r.trivial = w.empty();
    auto key = w.letters();
    auto inv = w.inverse().letters();
    if (std::find(seen.begin(), seen.end(), key) != seen.end() ||
        std::find(seen.begin(), seen.end(), inv) != seen.end())
      continue;
    seen.push_back(key);
    kept.push_back(std::move(r));
  }
  out.relators = kept;
  return out;
}

}  // namespace curvetop
