#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ptvertex/polys.hpp"

namespace ptvertex {

/// Truncated Laurent series in q over a coefficient ring C.
/// Coefficients for powers above the truncation are undefined and never
/// reported; negative powers are allowed.
template <class C>
class QLaurentSeries {
 public:
  explicit QLaurentSeries(int truncation) : trunc_(truncation) {}

  static QLaurentSeries one(int truncation) {
    QLaurentSeries s(truncation);
    s.set(0, C(1));
    return s;
  }

  int truncation() const { return trunc_; }
  bool empty() const { return coeffs_.empty(); }
  int lowest() const {
    if (coeffs_.empty())
      throw std::domain_error("QLaurentSeries: lowest of zero series");
    return coeffs_.begin()->first;
  }
  const std::map<int, C>& coeffs() const { return coeffs_; }

  C coeff(int k) const {
    if (k > trunc_)
      throw std::out_of_range("QLaurentSeries: power above truncation");
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? C(0) : it->second;
  }

  void set(int k, const C& c) {
    if (k > trunc_) return;
    if (c == C(0))
      coeffs_.erase(k);
    else
      coeffs_[k] = c;
  }
  void add(int k, const C& c) {
    if (k > trunc_) return;
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
      if (!(c == C(0))) coeffs_[k] = c;
    } else {
      it->second = it->second + c;
      if (it->second == C(0)) coeffs_.erase(it);
    }
  }

  friend QLaurentSeries operator+(const QLaurentSeries& a,
                                  const QLaurentSeries& b) {
    QLaurentSeries r(std::min(a.trunc_, b.trunc_));
    for (auto& [k, c] : a.coeffs_) r.add(k, c);
    for (auto& [k, c] : b.coeffs_) r.add(k, c);
    return r;
  }
  friend QLaurentSeries operator-(const QLaurentSeries& a,
                                  const QLaurentSeries& b) {
    QLaurentSeries r(std::min(a.trunc_, b.trunc_));
    for (auto& [k, c] : a.coeffs_) r.add(k, c);
    for (auto& [k, c] : b.coeffs_) r.add(k, C(0) - c);
    return r;
  }
  friend QLaurentSeries operator*(const QLaurentSeries& a,
                                  const QLaurentSeries& b) {
    QLaurentSeries r(std::min(a.trunc_, b.trunc_));
    for (auto& [ka, ca] : a.coeffs_)
      for (auto& [kb, cb] : b.coeffs_) r.add(ka + kb, ca * cb);
    return r;
  }

  friend bool operator==(const QLaurentSeries& a, const QLaurentSeries& b) {
    // Compare on the common range of defined powers.
    int t = std::min(a.trunc_, b.trunc_);
    for (auto& [k, c] : a.coeffs_)
      if (k <= t && !(b.coeff(k) == c)) return false;
    for (auto& [k, c] : b.coeffs_)
      if (k <= t && !(a.coeff(k) == c)) return false;
    return true;
  }

  QLaurentSeries shifted(int d) const {
    QLaurentSeries r(trunc_ + d);
    for (auto& [k, c] : coeffs_) r.coeffs_[k + d] = c;
    return r;
  }

  template <class F>
  auto map(F f) const -> QLaurentSeries<decltype(f(C(0)))> {
    QLaurentSeries<decltype(f(C(0)))> r(trunc_);
    for (auto& [k, c] : coeffs_) r.set(k, f(c));
    return r;
  }

 private:
  int trunc_;
  std::map<int, C> coeffs_;
};

/// MacMahon function M(-q) = prod (1-(-q)^n)^{-n}, as a q-series
/// truncated at the given order.
template <class C>
QLaurentSeries<C> macmahon_minus_q(int truncation) {
  QLaurentSeries<C> r = QLaurentSeries<C>::one(truncation);
  for (int n = 1; n <= truncation; ++n) {
    // geo = expansion of 1/(1-(-q)^n); multiply it in n times.
    QLaurentSeries<C> geo(truncation);
    for (int j = 0; j * n <= truncation; ++j) {
      long sign = (j * n) % 2 == 0 ? 1 : -1;  // (-q)^{nj}
      geo.add(j * n, C(sign));
    }
    for (int k = 0; k < n; ++k) r = r * geo;
  }
  return r;
}

inline Rat inv_of(const Rat& x) { return 1 / x; }
inline RatFuncS inv_of(const RatFuncS& x) { return x.inv(); }

/// Raise a series with constant term 1 to an arbitrary exponent from the
/// coefficient ring, via the binomial series applied to (S - 1).
template <class C>
QLaurentSeries<C> pow_series(const QLaurentSeries<C>& s, const C& expo) {
  if (!(s.coeff(0) == C(1)) || (!s.empty() && s.lowest() < 0))
    throw std::domain_error("pow_series: constant term must be 1");
  int t = s.truncation();
  QLaurentSeries<C> x = s;
  x.add(0, C(0) - C(1));  // x = s - 1, supported in positive powers
  QLaurentSeries<C> r = QLaurentSeries<C>::one(t);
  QLaurentSeries<C> xp = QLaurentSeries<C>::one(t);
  C binom(1);
  for (int k = 1; k <= t; ++k) {
    xp = xp * x;
    if (xp.empty()) break;
    C kk(k);
    C factor = (expo - C(k - 1)) * inv_of(kk);
    binom = binom * factor;
    for (auto& [p, c] : xp.coeffs()) r.add(p, binom * c);
  }
  return r;
}

}  // namespace ptvertex
