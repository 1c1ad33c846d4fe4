#pragma once

#include <array>
#include <cassert>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace ptvertex {

using Rat = mpq_class;

/// Exponent triple for the equivariant parameters (s1, s2, s3).
using Expo = std::array<int, 3>;

inline Expo expo_add(const Expo& a, const Expo& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

/// Polynomial in s1, s2, s3 with rational coefficients.
/// Terms are kept in lexicographic order; zero coefficients are never stored.
class PolyS {
 public:
  PolyS() = default;
  explicit PolyS(const Rat& c) {
    if (c != 0) terms_[{0, 0, 0}] = c;
  }
  PolyS(long c) : PolyS(Rat(c)) {}

  static PolyS monomial(const Expo& e, const Rat& c = 1) {
    PolyS p;
    if (c != 0) p.terms_[e] = c;
    return p;
  }
  /// The generator s_{i+1}, i in {0,1,2}.
  static PolyS var(int i) {
    Expo e{0, 0, 0};
    e[i] = 1;
    return monomial(e);
  }
  /// a*s1 + b*s2 + c*s3
  static PolyS linear(long a, long b, long c) {
    PolyS p;
    if (a) p.terms_[{1, 0, 0}] = a;
    if (b) p.terms_[{0, 1, 0}] = b;
    if (c) p.terms_[{0, 0, 1}] = c;
    return p;
  }

  const std::map<Expo, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == Expo{0, 0, 0});
  }
  Rat constant_term() const {
    auto it = terms_.find({0, 0, 0});
    return it == terms_.end() ? Rat(0) : it->second;
  }

  int degree(int v) const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;  // -1 for the zero polynomial
  }

  void add_term(const Expo& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_[e] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  PolyS operator-() const {
    PolyS r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  PolyS& operator+=(const PolyS& o) {
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  PolyS& operator-=(const PolyS& o) {
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend PolyS operator+(PolyS a, const PolyS& b) { return a += b; }
  friend PolyS operator-(PolyS a, const PolyS& b) { return a -= b; }
  friend PolyS operator*(const PolyS& a, const PolyS& b) {
    PolyS r;
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) r.add_term(expo_add(ea, eb), ca * cb);
    return r;
  }
  PolyS& operator*=(const PolyS& o) { return *this = *this * o; }
  PolyS& operator*=(const Rat& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [e, t] : terms_) t *= c;
    }
    return *this;
  }
  friend PolyS operator*(PolyS a, const Rat& c) { return a *= c; }

  friend bool operator==(const PolyS& a, const PolyS& b) {
    return a.terms_ == b.terms_;
  }

  /// Leading (lexicographically greatest) term.
  std::pair<Expo, Rat> leading() const {
    assert(!terms_.empty());
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
  }

  /// Exact division; throws if the quotient is not polynomial.
  friend PolyS divexact(PolyS a, const PolyS& b) {
    if (b.is_zero()) throw std::invalid_argument("PolyS: division by zero");
    PolyS q;
    auto [lb, cb] = b.leading();
    while (!a.is_zero()) {
      auto [la, ca] = a.leading();
      Expo e{la[0] - lb[0], la[1] - lb[1], la[2] - lb[2]};
      if (e[0] < 0 || e[1] < 0 || e[2] < 0)
        throw std::domain_error("PolyS: inexact division");
      PolyS m = monomial(e, ca / cb);
      q += m;
      a -= m * b;
    }
    return q;
  }

  /// Substitute the given polynomial for variable v.
  PolyS substitute(int v, const PolyS& val) const {
    // Group by degree in v, then Horner.
    int d = degree(v);
    if (d <= 0) return *this;
    std::vector<PolyS> coeff(d + 1);
    for (auto& [e, c] : terms_) {
      Expo r = e;
      int k = r[v];
      r[v] = 0;
      coeff[k].add_term(r, c);
    }
    PolyS acc = coeff[d];
    for (int k = d - 1; k >= 0; --k) acc = acc * val + coeff[k];
    return acc;
  }

  Rat eval(const std::array<Rat, 3>& pt) const {
    Rat acc = 0;
    for (auto& [e, c] : terms_) {
      Rat m = c;
      for (int v = 0; v < 3; ++v)
        for (int k = 0; k < e[v]; ++k) m *= pt[v];
      acc += m;
    }
    return acc;
  }

  /// Scale so the lexicographically least term has coefficient 1.
  /// Returns the factor that was divided out.
  Rat normalize_least() {
    if (terms_.empty()) return 1;
    Rat c = terms_.begin()->second;
    for (auto& [e, t] : terms_) t /= c;
    return c;
  }

  std::string str() const;

 private:
  std::map<Expo, Rat> terms_;
};

namespace detail {

// Dense univariate view of a PolyS in variable v, coefficients in the
// remaining variables.
inline std::vector<PolyS> to_univariate(const PolyS& p, int v) {
  std::vector<PolyS> c(std::max(0, p.degree(v)) + 1);
  for (auto& [e, q] : p.terms()) {
    Expo r = e;
    int k = r[v];
    r[v] = 0;
    c[k].add_term(r, q);
  }
  while (c.size() > 1 && c.back().is_zero()) c.pop_back();
  return c;
}

inline PolyS from_univariate(const std::vector<PolyS>& c, int v) {
  PolyS p;
  for (size_t k = 0; k < c.size(); ++k) {
    Expo shift{0, 0, 0};
    shift[v] = static_cast<int>(k);
    for (auto& [e, q] : c[k].terms()) p.add_term(expo_add(e, shift), q);
  }
  return p;
}

inline int uni_deg(const std::vector<PolyS>& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (!a[i].is_zero()) return i;
  return -1;
}

PolyS gcd(const PolyS& a, const PolyS& b);

inline PolyS content(const std::vector<PolyS>& c) {
  PolyS g;
  for (auto& q : c)
    if (!q.is_zero()) g = gcd(g, q);
  return g;
}

// Pseudo-remainder of a by b in the univariate representation.
inline std::vector<PolyS> prem(std::vector<PolyS> a,
                               const std::vector<PolyS>& b) {
  int db = uni_deg(b);
  assert(db >= 0);
  const PolyS& lb = b[db];
  int da = uni_deg(a);
  while (da >= db) {
    PolyS la = a[da];
    // a := lb * a - la * x^(da-db) * b
    for (auto& q : a) q *= lb;
    for (int i = 0; i <= db; ++i) {
      a[da - db + i] -= la * b[i];
    }
    int nd = uni_deg(a);
    assert(nd < da);
    da = nd;
    a.resize(std::max(0, da) + 1);
  }
  return a;
}

/// Multivariate gcd over Q by primitive pseudo-remainder sequences.
/// Result is normalized so its lexicographically least term is 1.
inline PolyS gcd(const PolyS& a, const PolyS& b) {
  if (a.is_zero()) {
    PolyS r = b;
    r.normalize_least();
    return r;
  }
  if (b.is_zero()) {
    PolyS r = a;
    r.normalize_least();
    return r;
  }
  int v = -1;
  for (int i = 0; i < 3; ++i)
    if (a.degree(i) > 0 || b.degree(i) > 0) {
      v = i;
      break;
    }
  if (v < 0) return PolyS(1);  // both constant
  auto ua = to_univariate(a, v);
  auto ub = to_univariate(b, v);
  PolyS ca = content(ua), cb = content(ub);
  for (auto& q : ua) q = divexact(q, ca);
  for (auto& q : ub) q = divexact(q, cb);
  PolyS cg = gcd(ca, cb);
  if (uni_deg(ua) < uni_deg(ub)) std::swap(ua, ub);
  while (true) {
    int db = uni_deg(ub);
    if (db < 0) break;
    auto r = prem(ua, ub);
    if (uni_deg(r) >= 0) {
      PolyS cr = content(r);
      for (auto& q : r) q = divexact(q, cr);
    }
    ua = std::move(ub);
    ub = std::move(r);
  }
  PolyS g = from_univariate(ua, v) * cg;
  g.normalize_least();
  return g;
}

}  // namespace detail

inline PolyS gcd(const PolyS& a, const PolyS& b) { return detail::gcd(a, b); }

/// Rational function in s1, s2, s3.  Always stored reduced, with the
/// denominator's lexicographically least term normalized to coefficient 1,
/// so equal rational functions compare equal componentwise.
class RatFuncS {
 public:
  RatFuncS() : num_(), den_(1) {}
  RatFuncS(const Rat& c) : num_(c), den_(1) {}
  RatFuncS(long c) : num_(c), den_(1) {}
  RatFuncS(PolyS n) : num_(std::move(n)), den_(1) {}
  RatFuncS(PolyS n, PolyS d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::invalid_argument("RatFuncS: zero denominator");
    reduce();
  }

  const PolyS& num() const { return num_; }
  const PolyS& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFuncS operator-() const {
    RatFuncS r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFuncS operator+(const RatFuncS& a, const RatFuncS& b) {
    return RatFuncS(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFuncS operator-(const RatFuncS& a, const RatFuncS& b) {
    return RatFuncS(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFuncS operator*(const RatFuncS& a, const RatFuncS& b) {
    return RatFuncS(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFuncS operator/(const RatFuncS& a, const RatFuncS& b) {
    if (b.is_zero()) throw std::domain_error("RatFuncS: division by zero");
    return RatFuncS(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFuncS& operator+=(const RatFuncS& o) { return *this = *this + o; }
  RatFuncS& operator-=(const RatFuncS& o) { return *this = *this - o; }
  RatFuncS& operator*=(const RatFuncS& o) { return *this = *this * o; }
  RatFuncS& operator/=(const RatFuncS& o) { return *this = *this / o; }

  RatFuncS inv() const {
    if (is_zero()) throw std::domain_error("RatFuncS: inverting zero");
    return RatFuncS(den_, num_);
  }

  friend bool operator==(const RatFuncS& a, const RatFuncS& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// True if the reduced form is a constant rational.
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat as_constant() const {
    if (!is_constant()) throw std::domain_error("RatFuncS: not constant");
    return num_.constant_term() / den_.constant_term();
  }

  Rat eval(const std::array<Rat, 3>& pt) const {
    Rat d = den_.eval(pt);
    if (d == 0) throw std::domain_error("RatFuncS: denominator vanishes at point");
    return num_.eval(pt) / d;
  }

  /// Substitute a polynomial for variable v (the substitution must not
  /// annihilate the denominator).
  RatFuncS substitute(int v, const PolyS& val) const {
    PolyS d = den_.substitute(v, val);
    if (d.is_zero())
      throw std::domain_error("RatFuncS: substitution hits a pole");
    return RatFuncS(num_.substitute(v, val), d);
  }

  std::string str() const;

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = PolyS(1);
      return;
    }
    PolyS g = gcd(num_, den_);
    if (!(g == PolyS(1))) {
      num_ = divexact(num_, g);
      den_ = divexact(den_, g);
    }
    Rat c = den_.normalize_least();
    num_ *= 1 / c;
  }

  PolyS num_, den_;
};

inline std::string PolyS::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Print from lexicographically greatest term downward.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rat a = c;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    } else if (a < 0) {
      os << "-";
      a = -a;
    }
    first = false;
    bool unit = (a == 1);
    bool has_var = e[0] || e[1] || e[2];
    if (!unit || !has_var) os << a.get_str();
    bool star = !unit && has_var;
    if (star) os << "*";
    bool firstv = true;
    for (int v = 0; v < 3; ++v) {
      if (!e[v]) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << "s" << (v + 1);
      if (e[v] != 1) os << "^" << e[v];
    }
  }
  return os.str();
}

inline std::string RatFuncS::str() const {
  if (den_ == PolyS(1)) return num_.str();
  std::string n = num_.str(), d = den_.str();
  std::string ln = num_.terms().size() > 1 ? "(" + n + ")" : n;
  std::string ld = den_.terms().size() > 1 ? "(" + d + ")" : d;
  return ln + "/" + ld;
}

}  // namespace ptvertex
