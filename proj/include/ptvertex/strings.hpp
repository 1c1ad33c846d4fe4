#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <utility>

#include "ptvertex/fracs.hpp"
#include "ptvertex/polys.hpp"

namespace ptvertex {

/// Parse a rational number "p", "-p" or "p/q".
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rat q(s);
  q.canonicalize();
  return q;
}

/// Parse the polynomial grammar emitted by PolyS::str():
/// terms separated by " + " / " - ", each a rational coefficient and/or
/// "*"-joined variable powers s1, s2^k, s3.
inline PolyS parse_poly(const std::string& s) {
  PolyS p;
  std::size_t i = 0, n = s.size();
  auto skip = [&] {
    while (i < n && s[i] == ' ') ++i;
  };
  auto number = [&]() -> Rat {
    std::size_t j = i;
    while (j < n && (std::isdigit(static_cast<unsigned char>(s[j])) ||
                     s[j] == '/'))
      ++j;
    Rat r = parse_rat(s.substr(i, j - i));
    i = j;
    return r;
  };
  skip();
  int sign = 1;
  if (i < n && s[i] == '-') {
    sign = -1;
    ++i;
  }
  while (true) {
    skip();
    if (i >= n) throw std::invalid_argument("polynomial: missing term");
    Rat coef = 1;
    if (std::isdigit(static_cast<unsigned char>(s[i]))) coef = number();
    Expo e{0, 0, 0};
    while (true) {
      std::size_t save = i;
      if (i < n && s[i] == '*') ++i;
      if (i < n && s[i] == 's' && i + 1 < n &&
          s[i + 1] >= '1' && s[i + 1] <= '3') {
        int v = s[i + 1] - '1';
        i += 2;
        int pw = 1;
        if (i < n && s[i] == '^') {
          ++i;
          std::size_t j = i;
          while (j < n && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
          pw = std::stoi(s.substr(i, j - i));
          i = j;
        }
        e[v] += pw;
      } else {
        i = save;
        break;
      }
    }
    p.add_term(e, Rat(sign) * coef);
    skip();
    if (i >= n) break;
    if (s[i] == '+')
      sign = 1;
    else if (s[i] == '-')
      sign = -1;
    else
      throw std::invalid_argument("polynomial: unexpected character");
    ++i;
  }
  return p;
}

/// Canonical coefficient string of a factored fraction: the bare
/// numerator polynomial, or "(num)/(den)" with the denominator expanded.
inline std::string ratio_str(const FracS& x) {
  if (x.denominator_factors().empty()) return x.numerator().str();
  return "(" + x.numerator().str() + ")/(" + x.denominator().str() + ")";
}

/// Parse the ratio_str() grammar back into a numerator/denominator pair.
inline std::pair<PolyS, PolyS> parse_ratio(const std::string& s) {
  if (!s.empty() && s.front() == '(') {
    auto mid = s.find(")/(");
    if (mid == std::string::npos || s.back() != ')')
      throw std::invalid_argument("ratio: malformed parentheses");
    return {parse_poly(s.substr(1, mid - 1)),
            parse_poly(s.substr(mid + 3, s.size() - mid - 4))};
  }
  return {parse_poly(s), PolyS(1)};
}

/// Check that a coefficient string reproduces the value it was printed
/// from (cross-multiplied comparison, so the parse needs no factoring).
inline bool ratio_round_trips(const std::string& s, const FracS& x) {
  auto [num, den] = parse_ratio(s);
  return num * x.denominator() == den * x.numerator();
}

}  // namespace ptvertex
