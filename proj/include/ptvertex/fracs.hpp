#pragma once

#include <array>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "ptvertex/errors.hpp"
#include "ptvertex/polys.hpp"

namespace ptvertex {

/// Rational function in s1, s2, s3 whose denominator is kept as a product
/// of primitive integer homogeneous linear forms.  Every denominator the
/// localization pipeline produces has this shape, so reduction never needs
/// a multivariate gcd: common factors are removed by trial exact division
/// of the numerator by the stored linear factors.
class FracS {
 public:
  using Form = std::array<long, 3>;  // primitive, first nonzero entry > 0

  FracS() = default;  // zero
  FracS(long c) : num_(c) {}
  FracS(const Rat& c) : num_(c) {}
  explicit FracS(PolyS p) : num_(std::move(p)) {}

  const PolyS& numerator() const { return num_; }
  const std::map<Form, int>& denominator_factors() const { return den_; }

  PolyS denominator() const {
    PolyS d(1);
    for (auto& [f, e] : den_)
      for (int k = 0; k < e; ++k) d = d * PolyS::linear(f[0], f[1], f[2]);
    return d;
  }

  bool is_zero() const { return num_.is_zero(); }

  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  Rat as_constant() const {
    if (!is_constant())
      throw std::domain_error("FracS: not a constant");
    return num_.constant_term();
  }

  friend FracS operator+(const FracS& a, const FracS& b) {
    FracS r;
    r.den_ = a.den_;
    for (auto& [f, e] : b.den_) {
      auto it = r.den_.find(f);
      if (it == r.den_.end())
        r.den_[f] = e;
      else
        it->second = std::max(it->second, e);
    }
    r.num_ = a.num_ * cofactor(r.den_, a.den_) +
             b.num_ * cofactor(r.den_, b.den_);
    r.reduce();
    return r;
  }
  friend FracS operator-(const FracS& a, const FracS& b) {
    PolyS nb = b.num_;
    FracS mb;
    mb.num_ = PolyS() - nb;
    mb.den_ = b.den_;
    return a + mb;
  }
  friend FracS operator*(const FracS& a, const FracS& b) {
    FracS r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    for (auto& [f, e] : b.den_) r.den_[f] += e;
    r.reduce();
    return r;
  }
  friend FracS operator/(const FracS& a, const FracS& b) {
    return a * b.inv();
  }

  /// Reciprocal; defined for constants and (scaled) homogeneous linear
  /// numerators, which is all the localization pipeline ever inverts.
  FracS inv() const {
    if (num_.is_zero())
      throw std::domain_error("FracS: division by zero");
    FracS r;
    r.num_ = denominator();
    if (num_.is_constant()) {
      r.num_ *= 1 / num_.constant_term();
      return r;
    }
    auto lin = as_linear_form(num_);
    r.num_ *= 1 / lin.second;
    r.den_[lin.first] += 1;
    r.reduce();
    return r;
  }

  friend bool operator==(const FracS& a, const FracS& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.denominator() == b.num_ * a.denominator();
  }

  Rat eval(const std::array<Rat, 3>& pt) const {
    Rat d = num_.eval(pt);
    for (auto& [f, e] : den_) {
      Rat v = f[0] * pt[0] + f[1] * pt[1] + f[2] * pt[2];
      if (v == 0) throw degenerate_point_error("FracS: pole at point");
      for (int k = 0; k < e; ++k) d /= v;
    }
    return d;
  }

  /// Substitute variable v by a homogeneous linear polynomial.
  FracS substitute(int v, const PolyS& val) const {
    FracS r;
    r.num_ = num_.substitute(v, val);
    for (auto& [f, e] : den_) {
      PolyS l = PolyS::linear(f[0], f[1], f[2]).substitute(v, val);
      if (l.is_zero())
        throw degenerate_point_error(
            "FracS: substitution kills a denominator factor");
      auto lin = as_linear_form(l);
      r.den_[lin.first] += e;
      Rat scale = 1;
      for (int k = 0; k < e; ++k) scale *= lin.second;
      r.num_ *= 1 / scale;
    }
    r.reduce();
    return r;
  }

  std::string str() const {
    if (den_.empty()) return num_.str();
    std::ostringstream os;
    os << "(" << num_.str() << ") / (" << denominator().str() << ")";
    return os.str();
  }

 private:
  /// Decompose a nonzero polynomial c * (a s1 + b s2 + d s3) into the
  /// primitive form and the rational scale c.
  static std::pair<Form, Rat> as_linear_form(const PolyS& p) {
    std::array<Rat, 3> c{0, 0, 0};
    for (auto& [e, coef] : p.terms()) {
      int sum = e[0] + e[1] + e[2];
      if (sum != 1)
        throw std::domain_error(
            "FracS: denominator factor is not homogeneous linear: " + p.str());
      for (int i = 0; i < 3; ++i)
        if (e[i] == 1) c[i] = coef;
    }
    // Scale to a primitive integer vector with positive leading entry.
    Rat scale = 0;
    for (auto& x : c)
      if (x != 0) {
        scale = x;
        break;
      }
    Form f;
    long g = 0;
    std::array<Rat, 3> ratio;
    for (int i = 0; i < 3; ++i) ratio[i] = c[i] / scale;
    // ratio entries are rationals with small denominators; clear them.
    long lcm = 1;
    for (auto& x : ratio)
      lcm = std::lcm(lcm, static_cast<long>(x.get_den().get_si()));
    for (int i = 0; i < 3; ++i)
      f[i] = static_cast<long>(Rat(ratio[i] * lcm).get_num().get_si());
    for (int i = 0; i < 3; ++i) g = std::gcd(g, f[i]);
    for (int i = 0; i < 3; ++i) f[i] /= g;
    Rat primitive_scale = scale * Rat(g) / Rat(lcm);
    return {f, primitive_scale};
  }

  /// Product of the linear forms in `all` in excess of those in `have`.
  static PolyS cofactor(const std::map<Form, int>& all,
                        const std::map<Form, int>& have) {
    PolyS p(1);
    for (auto& [f, e] : all) {
      auto it = have.find(f);
      int missing = e - (it == have.end() ? 0 : it->second);
      for (int k = 0; k < missing; ++k)
        p = p * PolyS::linear(f[0], f[1], f[2]);
    }
    return p;
  }

  void reduce() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      PolyS l = PolyS::linear(it->first[0], it->first[1], it->first[2]);
      while (it->second > 0) {
        try {
          num_ = divexact(num_, l);
        } catch (const std::exception&) {
          break;
        }
        --it->second;
      }
      it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
  }

  PolyS num_;
  std::map<Form, int> den_;
};

inline FracS inv_of(const FracS& x) { return x.inv(); }

/// Symbolic coefficient context backed by factored-denominator fractions;
/// the preferred symbolic mode for localization sums, where gcd-based
/// reduction is prohibitively slow.
struct FactoredEval {
  using Elem = FracS;
  Elem s_part(const std::array<long, 3>& a) const {
    return FracS(PolyS::linear(a[0], a[1], a[2]));
  }
  static Elem from_rat(const Rat& r) { return FracS(r); }
};

}  // namespace ptvertex
