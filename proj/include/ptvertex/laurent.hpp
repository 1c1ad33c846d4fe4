#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "ptvertex/errors.hpp"
#include "ptvertex/partitions.hpp"

namespace ptvertex {

/// Exponent vector of the line-bundle twist variables xi_p (sparse,
/// indexed by path-component id).  Empty map = trivial twist.
using TwistExp = std::map<int, int>;

/// Laurent polynomial in t1, t2, t3 and the twist variables xi_p, with
/// integer coefficients.  This is the ambient ring for all character
/// bookkeeping; t exponents may be negative.
class LaurentPolyT {
 public:
  using Key = std::pair<Weight, TwistExp>;

  LaurentPolyT() = default;

  static LaurentPolyT monomial(const Weight& w, long c = 1,
                               TwistExp xi = {}) {
    LaurentPolyT p;
    p.add_term(w, c, std::move(xi));
    return p;
  }

  void add_term(const Weight& w, long c, TwistExp xi = {}) {
    if (c == 0) return;
    // Drop zero xi exponents so keys are canonical.
    for (auto it = xi.begin(); it != xi.end();)
      it = it->second == 0 ? xi.erase(it) : std::next(it);
    Key k{w, std::move(xi)};
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(std::move(k), c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<Key, long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long coeff(const Weight& w, const TwistExp& xi = {}) const {
    auto it = terms_.find(Key{w, xi});
    return it == terms_.end() ? 0 : it->second;
  }

  friend LaurentPolyT operator+(const LaurentPolyT& a, const LaurentPolyT& b) {
    LaurentPolyT r = a;
    for (auto& [k, c] : b.terms_) r.add_term(k.first, c, k.second);
    return r;
  }
  friend LaurentPolyT operator-(const LaurentPolyT& a, const LaurentPolyT& b) {
    LaurentPolyT r = a;
    for (auto& [k, c] : b.terms_) r.add_term(k.first, -c, k.second);
    return r;
  }
  friend LaurentPolyT operator*(const LaurentPolyT& a, const LaurentPolyT& b) {
    LaurentPolyT r;
    for (auto& [ka, ca] : a.terms_)
      for (auto& [kb, cb] : b.terms_) {
        TwistExp xi = ka.second;
        for (auto& [p, e] : kb.second) xi[p] += e;
        r.add_term(weight_add(ka.first, kb.first), ca * cb, std::move(xi));
      }
    return r;
  }
  friend LaurentPolyT operator*(long c, const LaurentPolyT& a) {
    LaurentPolyT r;
    for (auto& [k, cc] : a.terms_) r.add_term(k.first, c * cc, k.second);
    return r;
  }
  friend bool operator==(const LaurentPolyT& a, const LaurentPolyT& b) {
    return a.terms_ == b.terms_;
  }

  /// Bar involution: t_i -> t_i^{-1}, xi_p -> xi_p^{-1}.
  LaurentPolyT bar() const {
    LaurentPolyT r;
    for (auto& [k, c] : terms_) {
      Weight w{-k.first[0], -k.first[1], -k.first[2]};
      TwistExp xi;
      for (auto& [p, e] : k.second) xi[p] = -e;
      r.add_term(w, c, std::move(xi));
    }
    return r;
  }

  /// Substitute t_j -> prod_i t_i^{M[i][j]} (monomial change of variables);
  /// twists are untouched.
  LaurentPolyT substitute_t(const std::array<std::array<int, 3>, 3>& M) const {
    LaurentPolyT r;
    for (auto& [k, c] : terms_) {
      Weight w{0, 0, 0};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) w[i] += M[i][j] * k.first[j];
      r.add_term(w, c, k.second);
    }
    return r;
  }

  /// Exact division by (1 - t_axis).  Throws cancellation_error if the
  /// quotient is not a Laurent polynomial.
  LaurentPolyT div_one_minus_t(int axis) const {
    // Group terms by the key with the t_axis exponent removed, then take
    // prefix sums along t_axis:  if P = sum c_k t^k then Q = sum q_k t^k
    // with q_k = sum_{j <= k} c_j satisfies (1 - t) Q = P exactly when the
    // full sum of the c_k vanishes.
    struct RestKey {
      std::array<int, 2> w;
      TwistExp xi;
      auto operator<=>(const RestKey&) const = default;
    };
    std::map<RestKey, std::map<int, long>> fibers;
    for (auto& [k, c] : terms_) {
      RestKey rk;
      int j = 0;
      for (int i = 0; i < 3; ++i)
        if (i != axis) rk.w[j++] = k.first[i];
      rk.xi = k.second;
      fibers[rk][k.first[axis]] += c;
    }
    LaurentPolyT q;
    for (auto& [rk, fib] : fibers) {
      // Walk every exponent from the lowest to the highest, including the
      // gaps: the running sum can be nonzero between input terms.
      long run = 0;
      int lo = fib.begin()->first, hi = fib.rbegin()->first;
      for (int k = lo; k <= hi; ++k) {
        auto it = fib.find(k);
        run += it == fib.end() ? 0 : it->second;
        if (run != 0) {
          Weight w;
          int j = 0;
          for (int i = 0; i < 3; ++i)
            w[i] = (i == axis) ? k : rk.w[j++];
          q.add_term(w, run, rk.xi);
        }
      }
      if (run != 0)
        throw cancellation_error(
            "div_one_minus_t: inexact division along t" +
            std::to_string(axis + 1));
    }
    return q;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : terms_) {
      if (!first) os << (c > 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      long a = c > 0 ? c : -c;
      std::string mono;
      for (int i = 0; i < 3; ++i)
        if (k.first[i] != 0)
          mono += (mono.empty() ? "" : "*") + ("t" + std::to_string(i + 1)) +
                  (k.first[i] == 1 ? "" : "^" + std::to_string(k.first[i]));
      for (auto& [p, e] : k.second)
        mono += (mono.empty() ? "" : "*") + ("xi" + std::to_string(p + 1)) +
                (e == 1 ? "" : "^" + std::to_string(e));
      if (mono.empty()) {
        os << a;
      } else {
        if (a != 1) os << a << "*";
        os << mono;
      }
      first = false;
    }
    return os.str();
  }

 private:
  std::map<Key, long> terms_;
};

/// (1 - t1)(1 - t2)(1 - t3).
inline LaurentPolyT delta_full() {
  LaurentPolyT d = LaurentPolyT::monomial({0, 0, 0});
  for (int i = 0; i < 3; ++i) {
    LaurentPolyT f = LaurentPolyT::monomial({0, 0, 0});
    Weight e = unit_weight(i);
    f.add_term(e, -1);
    d = d * f;
  }
  return d;
}

/// Delta / (1 - t_axis) = product over the other two axes of (1 - t_j).
inline LaurentPolyT delta_skip(int axis) {
  LaurentPolyT d = LaurentPolyT::monomial({0, 0, 0});
  for (int i = 0; i < 3; ++i) {
    if (i == axis) continue;
    LaurentPolyT f = LaurentPolyT::monomial({0, 0, 0});
    f.add_term(unit_weight(i), -1);
    d = d * f;
  }
  return d;
}

}  // namespace ptvertex
