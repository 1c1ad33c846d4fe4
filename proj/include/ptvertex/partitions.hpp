#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptvertex {

/// Weight in the weight lattice Z^3 of the torus.
using Weight = std::array<int, 3>;

inline Weight weight_add(const Weight& a, const Weight& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Weight unit_weight(int axis) {  // axis in 0..2
  Weight e{0, 0, 0};
  e[axis] = 1;
  return e;
}

/// 2-dimensional partition: weakly decreasing positive parts.
class Partition2D {
 public:
  Partition2D() = default;
  Partition2D(std::initializer_list<int> parts) : parts_(parts) { check(); }
  explicit Partition2D(std::vector<int> parts) : parts_(std::move(parts)) {
    check();
  }

  const std::vector<int>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
  }
  int max_part() const { return parts_.empty() ? 0 : parts_[0]; }

  /// True if (a, b) indexes a cell of the Young diagram:
  /// 0 <= a < length and 0 <= b < parts[a].
  bool contains(int a, int b) const {
    return a >= 0 && a < length() && b >= 0 && b < parts_[a];
  }

  std::set<std::pair<int, int>> cells() const {
    std::set<std::pair<int, int>> c;
    for (int a = 0; a < length(); ++a)
      for (int b = 0; b < parts_[a]; ++b) c.insert({a, b});
    return c;
  }

  Partition2D transposed() const {
    std::vector<int> t;
    for (int b = 0; b < max_part(); ++b) {
      int cnt = 0;
      for (int p : parts_)
        if (p > b) ++cnt;
      t.push_back(cnt);
    }
    return Partition2D(std::move(t));
  }

  friend bool operator==(const Partition2D& a, const Partition2D& b) {
    return a.parts_ == b.parts_;
  }
  friend auto operator<=>(const Partition2D& a, const Partition2D& b) {
    return a.parts_ <=> b.parts_;
  }

  std::string str() const {
    if (parts_.empty()) return "-";
    std::ostringstream os;
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) os << ",";
      os << parts_[i];
    }
    return os.str();
  }

 private:
  void check() const {
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0)
        throw std::invalid_argument("Partition2D: parts must be positive");
      if (i && parts_[i] > parts_[i - 1])
        throw std::invalid_argument("Partition2D: parts must be decreasing");
    }
  }

  std::vector<int> parts_;
};

/// Triple of outgoing partitions (mu^1, mu^2, mu^3).
struct LegTriple {
  std::array<Partition2D, 3> mu;

  LegTriple() = default;
  LegTriple(Partition2D m1, Partition2D m2, Partition2D m3)
      : mu{std::move(m1), std::move(m2), std::move(m3)} {}

  const Partition2D& operator[](int axis) const { return mu[axis]; }
  bool all_empty() const {
    return mu[0].empty() && mu[1].empty() && mu[2].empty();
  }
  int total_size() const { return mu[0].size() + mu[1].size() + mu[2].size(); }

  /// Largest extent of any leg cross-section (max of lengths and parts).
  int max_extent() const {
    int e = 0;
    for (auto& m : mu) e = std::max({e, m.length(), m.max_part()});
    return e;
  }

  LegTriple cycled() const {  // (mu^2, mu^3, mu^1)
    return LegTriple(mu[1], mu[2], mu[0]);
  }

  /// Leg data after the coordinate rotation axis 1 -> 2 -> 3 -> 1.
  /// The cross-section planes keep their transverse axes in increasing
  /// order, so two of the rotated legs pick up a transpose.
  LegTriple rotated() const {
    return LegTriple(mu[2], mu[0].transposed(), mu[1].transposed());
  }

  friend bool operator==(const LegTriple& a, const LegTriple& b) {
    return a.mu == b.mu;
  }
  friend auto operator<=>(const LegTriple& a, const LegTriple& b) {
    return a.mu <=> b.mu;
  }

  std::string str() const {
    return mu[0].str() + ";" + mu[1].str() + ";" + mu[2].str();
  }
};

/// Cross-section cell index of weight w for the cylinder along `axis`
/// (0-based).  The two transverse coordinates are taken in increasing
/// axis order: axis 0 -> (w2, w3), axis 1 -> (w1, w3), axis 2 -> (w1, w2).
inline std::pair<int, int> cross_section(int axis, const Weight& w) {
  switch (axis) {
    case 0: return {w[1], w[2]};
    case 1: return {w[0], w[2]};
    default: return {w[0], w[1]};
  }
}

/// Membership of w in the infinite cylinder Cyl_axis along the x_axis-axis.
inline bool cylinder_contains(const LegTriple& legs, int axis,
                              const Weight& w) {
  auto [a, b] = cross_section(axis, w);
  return legs[axis].contains(a, b);
}

enum class WeightTag { Iplus, II, III, Iminus, Outside };

struct WeightClass {
  WeightTag tag;
  std::array<bool, 3> supports{false, false, false};

  int support_count() const {
    return (supports[0] ? 1 : 0) + (supports[1] ? 1 : 0) +
           (supports[2] ? 1 : 0);
  }
  /// For a weight in exactly one or two cylinders: the unique cylinder,
  /// respectively the unique axis whose cylinder is missing.
  int unique_support() const {
    for (int i = 0; i < 3; ++i)
      if (supports[i]) return i;
    return -1;
  }
  int missing_axis() const {
    for (int i = 0; i < 3; ++i)
      if (!supports[i]) return i;
    return -1;
  }
};

inline WeightClass classify_weight(const LegTriple& legs, const Weight& w) {
  WeightClass c;
  for (int i = 0; i < 3; ++i) c.supports[i] = cylinder_contains(legs, i, w);
  int n = c.support_count();
  if (n == 0) {
    c.tag = WeightTag::Outside;
  } else if (w[0] < 0 || w[1] < 0 || w[2] < 0) {
    c.tag = WeightTag::Iminus;
  } else if (n == 1) {
    c.tag = WeightTag::Iplus;
  } else if (n == 2) {
    c.tag = WeightTag::II;
  } else {
    c.tag = WeightTag::III;
  }
  return c;
}

/// Number of lattice points of the minimal curve inside [0, N]^3
/// (union of the three cylinders, multiplicity 1).
inline long curve_window_count(const LegTriple& legs, int N) {
  long count = 0;
  for (int x = 0; x <= N; ++x)
    for (int y = 0; y <= N; ++y)
      for (int z = 0; z <= N; ++z) {
        Weight w{x, y, z};
        for (int i = 0; i < 3; ++i)
          if (cylinder_contains(legs, i, w)) {
            ++count;
            break;
          }
      }
  return count;
}

/// Renormalized volume of the minimal Cohen-Macaulay curve:
/// #{pi cap [0..N]^3} - (N+1) * sum |mu^i|, independent of N once N is
/// large enough; computed at two window sizes and asserted equal.
inline int renormalized_volume(const LegTriple& legs) {
  int N = std::max(legs.max_extent(), 1);
  long v1 = curve_window_count(legs, N) - long(N + 1) * legs.total_size();
  long v2 = curve_window_count(legs, N + 1) - long(N + 2) * legs.total_size();
  assert(v1 == v2);
  (void)v2;
  return static_cast<int>(v1);
}

/// Parse the partition grammar: comma-separated decreasing positive
/// integers, "-" for the empty partition.
inline Partition2D parse_partition(const std::string& text) {
  std::string t = text;
  // trim
  auto issp = [](char c) { return c == ' ' || c == '\t'; };
  while (!t.empty() && issp(t.front())) t.erase(t.begin());
  while (!t.empty() && issp(t.back())) t.pop_back();
  if (t.empty() || t == "-") return Partition2D();
  std::vector<int> parts;
  std::istringstream is(t);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size())
      throw std::invalid_argument("bad partition token: '" + tok + "'");
    parts.push_back(v);
  }
  return Partition2D(std::move(parts));
}

/// Parse a leg triple "mu1;mu2;mu3".
inline LegTriple parse_legs(const std::string& text) {
  std::vector<std::string> pieces;
  std::string cur;
  for (char c : text) {
    if (c == ';') {
      pieces.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  pieces.push_back(cur);
  if (pieces.size() != 3)
    throw std::invalid_argument("legs must have exactly three components");
  return LegTriple(parse_partition(pieces[0]), parse_partition(pieces[1]),
                   parse_partition(pieces[2]));
}

}  // namespace ptvertex
