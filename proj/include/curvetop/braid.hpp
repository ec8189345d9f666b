#pragma once

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "curvetop/errors.hpp"

namespace curvetop {

/// Freely reduced word in the free group on e_1..e_n. Letters are signed
/// 1-based generator indices; reduction happens on construction and append.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(int n) : n_(n) {}
  FreeWord(int n, const std::vector<int>& letters) : n_(n) {
    for (int l : letters) push(l);
  }

  int rank() const { return n_; }
  const std::vector<int>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  void push(int letter) {
    if (letter == 0 || std::abs(letter) > n_) throw RankMismatch("free-word letter out of range");
    if (!letters_.empty() && letters_.back() == -letter)
      letters_.pop_back();
    else
      letters_.push_back(letter);
  }

  void append(const FreeWord& w) {
    for (int l : w.letters_) push(l);
  }

  FreeWord inverse() const {
    FreeWord r(n_);
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.push(-*it);
    return r;
  }

  static FreeWord generator(int n, int j) {
    FreeWord w(n);
    w.push(j);
    return w;
  }

  friend bool operator==(const FreeWord& a, const FreeWord& b) {
    return a.n_ == b.n_ && a.letters_ == b.letters_;
  }

  /// Exponent-sum vector, one entry per generator.
  std::vector<long> abelianized() const {
    std::vector<long> v(static_cast<std::size_t>(n_), 0);
    for (int l : letters_) v[static_cast<std::size_t>(std::abs(l)) - 1] += l > 0 ? 1 : -1;
    return v;
  }

  /// Removes matching conjugating prefix/suffix pairs.
  FreeWord cyclically_reduced() const {
    std::vector<int> w = letters_;
    while (w.size() >= 2 && w.front() == -w.back()) {
      w.erase(w.begin());
      w.pop_back();
    }
    FreeWord r(n_);
    r.letters_ = std::move(w);
    return r;
  }

  std::string str() const {
    if (letters_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i) s += " ";
      int l = letters_[i];
      s += "e" + std::to_string(std::abs(l));
      if (l < 0) s += "^-1";
    }
    return s;
  }

 private:
  int n_ = 0;
  std::vector<int> letters_;
};

/// Word in the Artin generators of B_n. Letters are signed 1-based indices
/// (k or -k, 1 <= k <= n-1). Composition concatenates without reducing.
struct Braid {
  int n = 0;
  std::vector<int> word;

  Braid() = default;
  explicit Braid(int strands) : n(strands) {}
  Braid(int strands, std::vector<int> w) : n(strands), word(std::move(w)) {
    for (int l : word)
      if (l == 0 || std::abs(l) >= n) throw StrandMismatch("braid letter out of range");
  }

  bool empty() const { return word.empty(); }

  Braid inverse() const {
    Braid r(n);
    r.word.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) r.word.push_back(-*it);
    return r;
  }

  /// Free reduction of the word (cancels adjacent s, -s pairs).
  Braid normalized() const {
    Braid r(n);
    for (int l : word) {
      if (!r.word.empty() && r.word.back() == -l)
        r.word.pop_back();
      else
        r.word.push_back(l);
    }
    return r;
  }

  std::string str() const {
    std::string s = "braid n=" + std::to_string(n) + ":";
    for (std::size_t i = 0; i < word.size(); ++i) s += (i ? "," : " ") + std::to_string(word[i]);
    return s;
  }
};

/// "a first, then b", matching path concatenation.
inline Braid compose(const Braid& a, const Braid& b) {
  if (a.n != b.n) throw StrandMismatch("strand counts differ in compose");
  Braid r(a.n);
  r.word = a.word;
  r.word.insert(r.word.end(), b.word.begin(), b.word.end());
  return r;
}

inline int exponent_sum(const Braid& b) {
  int s = 0;
  for (int l : b.word) s += l > 0 ? 1 : -1;
  return s;
}

/// Projection to the symmetric group: perm[i] = end position of the strand
/// starting at position i (0-based).
inline std::vector<int> permutation(const Braid& b) {
  std::vector<int> cur(static_cast<std::size_t>(b.n));
  std::iota(cur.begin(), cur.end(), 0);  // cur[pos] = start index
  for (int l : b.word) {
    int k = std::abs(l) - 1;
    std::swap(cur[static_cast<std::size_t>(k)], cur[static_cast<std::size_t>(k) + 1]);
  }
  std::vector<int> perm(static_cast<std::size_t>(b.n));
  for (int pos = 0; pos < b.n; ++pos) perm[static_cast<std::size_t>(cur[static_cast<std::size_t>(pos)])] = pos;
  return perm;
}

inline bool is_identity_permutation(const std::vector<int>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) return false;
  return true;
}

/// Artin action convention: sigma_k maps e_k -> e_k e_{k+1} e_k^-1 and
/// e_{k+1} -> e_k; letters of the braid act left to right, so
/// artin_action(compose(a,b), w) = artin_action(b, artin_action(a, w)).
inline FreeWord artin_action(const Braid& b, const FreeWord& w,
                             std::size_t length_cap = 1000000) {
  if (w.rank() != b.n) throw RankMismatch("free-word rank != strand count");
  std::vector<int> cur = w.letters();
  std::vector<int> next;
  for (int s : b.word) {
    int k = std::abs(s);
    next.clear();
    auto push = [&](int l) {
      if (!next.empty() && next.back() == -l)
        next.pop_back();
      else
        next.push_back(l);
    };
    for (int l : cur) {
      int a = std::abs(l);
      if (s > 0) {
        if (a == k)
          l > 0 ? (push(k), push(k + 1), push(-k)) : (push(k), push(-(k + 1)), push(-k));
        else if (a == k + 1)
          push(l > 0 ? k : -k);
        else
          push(l);
      } else {
        if (a == k)
          push(l > 0 ? k + 1 : -(k + 1));
        else if (a == k + 1)
          l > 0 ? (push(-(k + 1)), push(k), push(k + 1))
                : (push(-(k + 1)), push(-k), push(k + 1));
        else
          push(l);
      }
    }
    if (next.size() > length_cap)
      throw ActionOverflow("Artin action image exceeded the length cap");
    cur.swap(next);
  }
  return FreeWord(b.n, cur);
}

/// (sigma_1 ... sigma_{n-1})^n, the central full twist.
inline Braid full_twist(int n) {
  Braid b(n);
  for (int rep = 0; rep < n; ++rep)
    for (int k = 1; k < n; ++k) b.word.push_back(k);
  return b;
}

/// Equality through the faithful Artin representation, with cheap
/// invariant prefilters.
inline bool braids_equal(const Braid& a, const Braid& b) {
  if (a.n != b.n) throw StrandMismatch("strand counts differ in braids_equal");
  if (exponent_sum(a) != exponent_sum(b)) return false;
  if (permutation(a) != permutation(b)) return false;
  for (int j = 1; j <= a.n; ++j) {
    FreeWord ej = FreeWord::generator(a.n, j);
    if (!(artin_action(a, ej) == artin_action(b, ej))) return false;
  }
  return true;
}

/// Deterministic representative of the word modulo free cancellation and
/// far-commutation (sigma_i sigma_j = sigma_j sigma_i for |i-j| >= 2):
/// repeatedly cancel and bubble commuting neighbours into index order.
/// Used by the extractor so that simultaneous disjoint crossings serialize
/// the same way regardless of sampling noise.
inline std::vector<int> commutation_normal_form(std::vector<int> w) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> red;
    for (int l : w) {
      if (!red.empty() && red.back() == -l) {
        red.pop_back();
        changed = true;
      } else {
        red.push_back(l);
      }
    }
    w.swap(red);
    for (bool moved = true; moved;) {
      moved = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        int a = std::abs(w[i]), b = std::abs(w[i + 1]);
        if (std::abs(a - b) >= 2 && b < a) {
          std::swap(w[i], w[i + 1]);
          moved = true;
          changed = true;
        }
      }
    }
  }
  return w;
}

inline Braid parse_braid(const std::string& text) {
  // Format: "braid n=<k>: 1,2,-1"
  auto npos = text.find("n=");
  auto colon = text.find(':');
  if (npos == std::string::npos || colon == std::string::npos || colon < npos)
    throw Error("malformed braid text");
  Braid b(std::stoi(text.substr(npos + 2, colon - npos - 2)));
  std::size_t i = colon + 1;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',')) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ',') ++j;
    b.word.push_back(std::stoi(text.substr(i, j - i)));
    i = j;
  }
  return Braid(b.n, b.word);  // re-validate letters
}

}  // namespace curvetop
