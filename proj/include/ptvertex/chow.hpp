#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <sstream>

#include "ptvertex/errors.hpp"
#include "ptvertex/polys.hpp"

namespace ptvertex {

/// Integer linear form a*s1 + b*s2 + c*s3 + sum_p h_coeff[p]*h_p, where the
/// h_p are the nilpotent generators of the Chow ring of a product of P^1s.
struct LinearForm {
  std::array<long, 3> s{0, 0, 0};
  std::map<int, long> h;

  bool s_zero() const { return s[0] == 0 && s[1] == 0 && s[2] == 0; }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](long c, const std::string& v) {
      if (c == 0) return;
      if (!first) os << (c > 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      long a = c > 0 ? c : -c;
      if (a != 1) os << a << "*";
      os << v;
      first = false;
    };
    for (int i = 0; i < 3; ++i) emit(s[i], "s" + std::to_string(i + 1));
    for (auto& [p, c] : h) emit(c, "h" + std::to_string(p + 1));
    if (first) os << "0";
    return os.str();
  }
};

/// Symbolic coefficient context: scalars are rational functions in the s_i.
struct SymbolicEval {
  using Elem = RatFuncS;
  Elem s_part(const std::array<long, 3>& a) const {
    return RatFuncS(PolyS::linear(a[0], a[1], a[2]));
  }
  static Elem from_rat(const Rat& r) { return RatFuncS(r); }
};

/// Numeric coefficient context: all s-linear forms are evaluated at a fixed
/// rational point up front.
struct NumericEval {
  using Elem = Rat;
  std::array<Rat, 3> point;
  Elem s_part(const std::array<long, 3>& a) const {
    return a[0] * point[0] + a[1] * point[1] + a[2] * point[2];
  }
  static Elem from_rat(const Rat& r) { return r; }
};

/// Element of the equivariant Chow ring of (P^1)^d with coefficients in E:
/// a sum over square-free products of the nilpotent generators h_1..h_d.
/// The relation h_p^2 = 0 is enforced by the subset-mask representation.
template <class E>
class ChowElem {
 public:
  explicit ChowElem(int dim = 0) : dim_(dim) {}

  static ChowElem scalar(int dim, const E& c) {
    ChowElem x(dim);
    x.add(0u, c);
    return x;
  }
  static ChowElem one(int dim) { return scalar(dim, E(1)); }

  int dim() const { return dim_; }
  const std::map<std::uint32_t, E>& terms() const { return terms_; }

  void add(std::uint32_t mask, const E& c) {
    if (c == E(0)) return;
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
      terms_[mask] = c;
    } else {
      it->second = it->second + c;
      if (it->second == E(0)) terms_.erase(it);
    }
  }

  E coeff(std::uint32_t mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? E(0) : it->second;
  }
  E scalar_part() const { return coeff(0u); }

  friend ChowElem operator+(const ChowElem& a, const ChowElem& b) {
    ChowElem r(std::max(a.dim_, b.dim_));
    for (auto& [m, c] : a.terms_) r.add(m, c);
    for (auto& [m, c] : b.terms_) r.add(m, c);
    return r;
  }
  friend ChowElem operator-(const ChowElem& a, const ChowElem& b) {
    ChowElem r(std::max(a.dim_, b.dim_));
    for (auto& [m, c] : a.terms_) r.add(m, c);
    for (auto& [m, c] : b.terms_) r.add(m, E(0) - c);
    return r;
  }
  friend ChowElem operator*(const ChowElem& a, const ChowElem& b) {
    ChowElem r(std::max(a.dim_, b.dim_));
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) {
        if (ma & mb) continue;  // h_p^2 = 0
        r.add(ma | mb, ca * cb);
      }
    return r;
  }
  friend bool operator==(const ChowElem& a, const ChowElem& b) {
    return a.terms_ == b.terms_;
  }

  bool is_zero() const { return terms_.empty(); }

  /// Multiplicative inverse via the finite geometric expansion in the
  /// nilpotent part.  Requires a nonzero h-free term.
  ChowElem inverted() const {
    E a = scalar_part();
    if (a == E(0))
      throw cancellation_error(
          "ChowElem: non-invertible element (zero h-free term)");
    E ainv = inv_elem(a);
    ChowElem n(dim_);  // n = 1 - x/a, nilpotent
    for (auto& [m, c] : terms_) {
      if (m == 0u) continue;
      n.add(m, E(0) - c * ainv);
    }
    ChowElem r = one(dim_);
    ChowElem p = one(dim_);
    for (int k = 0; k < dim_; ++k) {
      p = p * n;
      if (p.is_zero()) break;
      r = r + p;
    }
    for (auto& [m, c] : r.terms_) c = c * ainv;
    return r;
  }

  /// Integral over (P^1)^d: the coefficient of h_1 h_2 ... h_d.
  E integrate() const {
    std::uint32_t full = dim_ == 0 ? 0u : ((1u << dim_) - 1u);
    return coeff(full);
  }

 private:
  template <class X>
  static X inv_elem(const X& x) { return x.inv(); }
  static Rat inv_elem(const Rat& x) { return 1 / x; }

  int dim_;
  std::map<std::uint32_t, E> terms_;
};

/// Build the Chow element of a LinearForm under the given evaluation
/// context (h coefficients stay exact integers times the generators).
template <class Ctx>
ChowElem<typename Ctx::Elem> chow_of_linear(const Ctx& ctx, int dim,
                                            const LinearForm& f) {
  ChowElem<typename Ctx::Elem> x(dim);
  x.add(0u, ctx.s_part(f.s));
  for (auto& [p, c] : f.h) x.add(1u << p, typename Ctx::Elem(Rat(c)));
  return x;
}

}  // namespace ptvertex
