#pragma once

#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "curvetop/errors.hpp"
#include "curvetop/gaussian_rational.hpp"
#include "curvetop/univariate.hpp"

namespace curvetop {

/// Bivariate polynomial over Q(i) with exact coefficients.
/// Keys are (deg_x, deg_y); zero coefficients are never stored.
class BivariatePolynomial {
 public:
  using Key = std::pair<int, int>;

  BivariatePolynomial() = default;

  static BivariatePolynomial constant(GaussianRational c) {
    BivariatePolynomial p;
    p.set({0, 0}, std::move(c));
    return p;
  }
  static BivariatePolynomial variable_x() {
    BivariatePolynomial p;
    p.set({1, 0}, GaussianRational(Rational(1)));
    return p;
  }
  static BivariatePolynomial variable_y() {
    BivariatePolynomial p;
    p.set({0, 1}, GaussianRational(Rational(1)));
    return p;
  }

  const std::map<Key, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  GaussianRational coeff(int dx, int dy) const {
    auto it = terms_.find({dx, dy});
    return it == terms_.end() ? GaussianRational() : it->second;
  }

  void set(Key k, GaussianRational c) {
    if (c.is_zero())
      terms_.erase(k);
    else
      terms_[k] = std::move(c);
  }

  void add_term(Key k, const GaussianRational& c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[k] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
    return d;
  }
  int deg_x() const {
    int d = -1;
    for (auto& [k, c] : terms_) d = std::max(d, k.first);
    return d;
  }
  int deg_y() const {
    int d = -1;
    for (auto& [k, c] : terms_) d = std::max(d, k.second);
    return d;
  }

  friend BivariatePolynomial operator+(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial r = a;
    for (auto& [k, c] : b.terms_) r.add_term(k, c);
    return r;
  }
  friend BivariatePolynomial operator-(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial r = a;
    for (auto& [k, c] : b.terms_) r.add_term(k, -c);
    return r;
  }
  friend BivariatePolynomial operator-(const BivariatePolynomial& a) {
    BivariatePolynomial r;
    for (auto& [k, c] : a.terms_) r.terms_[k] = -c;
    return r;
  }
  friend BivariatePolynomial operator*(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    BivariatePolynomial r;
    for (auto& [ka, ca] : a.terms_)
      for (auto& [kb, cb] : b.terms_)
        r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
  }

  friend bool operator==(const BivariatePolynomial& a, const BivariatePolynomial& b) {
    return a.terms_ == b.terms_;
  }

  BivariatePolynomial derivative_x() const {
    BivariatePolynomial r;
    for (auto& [k, c] : terms_)
      if (k.first > 0)
        r.set({k.first - 1, k.second}, c * GaussianRational(Rational(k.first)));
    return r;
  }
  BivariatePolynomial derivative_y() const {
    BivariatePolynomial r;
    for (auto& [k, c] : terms_)
      if (k.second > 0)
        r.set({k.first, k.second - 1}, c * GaussianRational(Rational(k.second)));
    return r;
  }

  BivariatePolynomial pow(int e) const {
    BivariatePolynomial r = constant(GaussianRational(Rational(1)));
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
  }

  /// Coefficients of y^j as univariate polynomials in x, j = 0..deg_y.
  std::vector<UPoly> y_coefficients() const {
    std::vector<UPoly> cs(static_cast<std::size_t>(std::max(0, deg_y() + 1)));
    for (auto& [k, c] : terms_) {
      UPoly& p = cs[static_cast<std::size_t>(k.second)];
      if (static_cast<int>(p.size()) <= k.first) p.resize(static_cast<std::size_t>(k.first) + 1);
      p[static_cast<std::size_t>(k.first)] = c;
    }
    for (auto& p : cs) utrim(p);
    return cs;
  }

  /// Specialization f(x0, y) as a univariate polynomial in y.
  UPoly specialize_x(const GaussianRational& x0) const {
    UPoly r(static_cast<std::size_t>(std::max(0, deg_y() + 1)));
    for (auto& [k, c] : terms_) {
      GaussianRational xp(Rational(1));
      for (int i = 0; i < k.first; ++i) xp *= x0;
      r[static_cast<std::size_t>(k.second)] += c * xp;
    }
    utrim(r);
    return r;
  }

 private:
  std::map<Key, GaussianRational> terms_;
};

/// f(x + t*y, y): the shear that restores genericity of the projection.
inline BivariatePolynomial shear(const BivariatePolynomial& f, const Rational& t) {
  if (t == 0) return f;
  BivariatePolynomial x_sub;  // x + t*y
  x_sub.set({1, 0}, GaussianRational(Rational(1)));
  x_sub.set({0, 1}, GaussianRational(t));
  BivariatePolynomial r;
  for (auto& [k, c] : f.terms()) {
    BivariatePolynomial term = BivariatePolynomial::constant(c) * x_sub.pow(k.first);
    BivariatePolynomial ypow;
    ypow.set({0, k.second}, GaussianRational(Rational(1)));
    r = r + term * ypow;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Parsing.
//
// expr   := ['-'] term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := base ('^' uint)?
// base   := 'x' | 'y' | 'i' | rational | '(' expr ')'
// ---------------------------------------------------------------------------

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : s_(text) {}

  BivariatePolynomial parse() {
    BivariatePolynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) throw SyntaxError("unexpected trailing input", pos_);
    return p;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  BivariatePolynomial expr() {
    bool neg = accept('-');
    BivariatePolynomial acc = term();
    if (neg) acc = -acc;
    while (true) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

  BivariatePolynomial term() {
    BivariatePolynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  BivariatePolynomial factor() {
    BivariatePolynomial b = base();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw SyntaxError("expected exponent", at);
      long e = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        e = e * 10 + (s_[pos_] - '0');
        if (e > 64) throw SyntaxError("exponent too large", at);
        ++pos_;
      }
      return b.pow(static_cast<int>(e));
    }
    return b;
  }

  BivariatePolynomial base() {
    skip_ws();
    if (pos_ >= s_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == 'x') {
      ++pos_;
      return BivariatePolynomial::variable_x();
    }
    if (c == 'y') {
      ++pos_;
      return BivariatePolynomial::variable_y();
    }
    if (c == 'i') {
      ++pos_;
      return BivariatePolynomial::constant(GaussianRational::unit_i());
    }
    if (c == '(') {
      ++pos_;
      BivariatePolynomial p = expr();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return BivariatePolynomial::constant(rational());
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  GaussianRational rational() {
    boost::multiprecision::cpp_int num = integer();
    if (accept('/')) {
      skip_ws();
      std::size_t at = pos_;
      boost::multiprecision::cpp_int den = integer();
      if (den == 0) throw SyntaxError("zero denominator", at);
      return GaussianRational(Rational(num, den));
    }
    return GaussianRational(Rational(num));
  }

  boost::multiprecision::cpp_int integer() {
    skip_ws();
    std::size_t at = pos_;
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw SyntaxError("expected integer", at);
    boost::multiprecision::cpp_int v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return v;
  }
};

inline std::string monomial_string(int dx, int dy) {
  std::string m;
  if (dx > 0) m += dx == 1 ? "x" : "x^" + std::to_string(dx);
  if (dy > 0) {
    if (!m.empty()) m += "*";
    m += dy == 1 ? "y" : "y^" + std::to_string(dy);
  }
  return m;
}

// Unsigned coefficient text; `lead` tells whether a factor "1" may be dropped.
inline std::string coeff_string(const GaussianRational& c, bool has_monomial) {
  if (c.im == 0) {
    std::string s = to_string(c.re < 0 ? Rational(-c.re) : c.re);
    if (has_monomial && s == "1") return "";
    return s;
  }
  if (c.re == 0) {
    Rational a = c.im < 0 ? Rational(-c.im) : c.im;
    std::string s = to_string(a);
    return s == "1" ? "i" : s + "*i";
  }
  // Mixed coefficients keep their sign inside the parentheses.
  std::string s = "(" + to_string(c.re);
  Rational a = c.im < 0 ? Rational(-c.im) : c.im;
  s += c.im < 0 ? " - " : " + ";
  s += (a == 1 ? "i" : to_string(a) + "*i") + ")";
  return s;
}

}  // namespace detail

inline BivariatePolynomial parse_polynomial(const std::string& text) {
  detail::PolyParser p(text);
  BivariatePolynomial poly = p.parse();
  if (poly.is_zero()) throw ZeroPolynomial();
  return poly;
}

/// Canonical printer: terms in graded-lex order (total degree descending,
/// then x-exponent descending). Round-trips through parse_polynomial.
inline std::string to_string(const BivariatePolynomial& f) {
  if (f.is_zero()) return "0";
  std::vector<std::pair<BivariatePolynomial::Key, GaussianRational>> ts(f.terms().begin(),
                                                                        f.terms().end());
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  std::string out;
  bool first = true;
  for (auto& [k, c] : ts) {
    std::string mono = detail::monomial_string(k.first, k.second);
    bool mixed = c.re != 0 && c.im != 0;
    bool negative = !mixed && (c.im == 0 ? c.re < 0 : c.im < 0);
    std::string body = detail::coeff_string(c, !mono.empty());
    if (!mono.empty()) body += (body.empty() ? "" : "*") + mono;
    if (first) {
      out += (negative ? "-" : "") + body;
      first = false;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out;
}

}  // namespace curvetop
