#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ptvertex/partitions.hpp"

namespace ptvertex {

enum class BoxTag { IminusBox, IIBox, IIIFull, IIILine };

inline std::string box_tag_name(BoxTag t) {
  switch (t) {
    case BoxTag::IminusBox: return "IminusBox";
    case BoxTag::IIBox: return "IIBox";
    case BoxTag::IIIFull: return "IIIFull";
    default: return "IIILine";
  }
}

inline int box_length(BoxTag t) { return t == BoxTag::IIIFull ? 2 : 1; }

/// A labelled box configuration with outgoing legs.  Path components and
/// restriction data are derived from the box set, never stored here.
struct BoxConfiguration {
  LegTriple legs;
  std::map<Weight, BoxTag> boxes;

  int length() const {
    int l = 0;
    for (auto& [w, t] : boxes) l += box_length(t);
    return l;
  }

  friend bool operator==(const BoxConfiguration& a,
                         const BoxConfiguration& b) {
    return a.legs == b.legs && a.boxes == b.boxes;
  }
  friend auto operator<=>(const BoxConfiguration& a,
                          const BoxConfiguration& b) {
    if (auto c = a.legs <=> b.legs; c != 0) return c;
    return a.boxes <=> b.boxes;
  }
};

/// One unit-translation-connected set of IIILine boxes.  The forced-label
/// set is collected from both forcing conditions:
///   (r+)  a member maps under some x_i to an unboxed type II weight,
///         forcing the label of the axis missing from that weight;
///   (r-)  a member is reached under some x_i from a boxed I- weight,
///         forcing the label of that weight's cylinder axis.
/// A valid configuration never collects two distinct forced labels.
struct PathComponentInfo {
  int id = 0;
  std::set<Weight> members;
  bool restricted = false;
  std::optional<int> forcedLabel;     // axis 0..2
  std::set<int> forcedLabelSet;       // all collected forcings
};

struct Violation {
  std::string rule;
  Weight where{0, 0, 0};
  std::string detail;
};

struct ValidationResult {
  bool valid = false;
  std::vector<Violation> violations;
};

namespace detail_box {

/// Unique cylinder of an I- weight (the axis of its negative coordinate).
inline int iminus_cylinder(const LegTriple& legs, const Weight& w) {
  for (int i = 0; i < 3; ++i)
    if (cylinder_contains(legs, i, w)) return i;
  throw std::logic_error("iminus_cylinder: weight outside all cylinders");
}

inline std::vector<PathComponentInfo> components_raw(
    const BoxConfiguration& c) {
  std::set<Weight> lines;
  for (auto& [w, t] : c.boxes)
    if (t == BoxTag::IIILine) lines.insert(w);
  std::vector<PathComponentInfo> out;
  std::set<Weight> seen;
  // Iteration over the ordered set makes component ids canonical:
  // components are numbered by their lexicographically least member.
  for (auto& start : lines) {
    if (seen.count(start)) continue;
    PathComponentInfo pc;
    pc.id = static_cast<int>(out.size());
    std::deque<Weight> queue{start};
    seen.insert(start);
    while (!queue.empty()) {
      Weight u = queue.front();
      queue.pop_front();
      pc.members.insert(u);
      for (int i = 0; i < 3; ++i)
        for (int d : {-1, 1}) {
          Weight v = u;
          v[i] += d;
          if (lines.count(v) && !seen.count(v)) {
            seen.insert(v);
            queue.push_back(v);
          }
        }
    }
    for (auto& u : pc.members) {
      for (int i = 0; i < 3; ++i) {
        Weight fwd = weight_add(u, unit_weight(i));
        auto cls = classify_weight(c.legs, fwd);
        if (cls.tag == WeightTag::II && !c.boxes.count(fwd))
          pc.forcedLabelSet.insert(cls.missing_axis());  // (r+)
        Weight back = u;
        back[i] -= 1;
        auto it = c.boxes.find(back);
        if (it != c.boxes.end() && it->second == BoxTag::IminusBox)
          pc.forcedLabelSet.insert(iminus_cylinder(c.legs, back));  // (r-)
      }
    }
    pc.restricted = !pc.forcedLabelSet.empty();
    if (pc.forcedLabelSet.size() == 1)
      pc.forcedLabel = *pc.forcedLabelSet.begin();
    out.push_back(std::move(pc));
  }
  return out;
}

/// A line in the 2-dimensional quotient at a type III weight, as far as
/// the closure rules can distinguish: a coordinate line, or the free label
/// of a path component.
struct LineRef {
  bool generic;
  int index;  // axis if !generic, component id if generic
  auto operator<=>(const LineRef&) const = default;
};

}  // namespace detail_box

/// Partition of the IIILine boxes into path components with restriction
/// data.  Throws if a component collects conflicting forced labels; use
/// validate_configuration first to treat that as a violation.
inline std::vector<PathComponentInfo> path_components(
    const BoxConfiguration& c) {
  auto out = detail_box::components_raw(c);
  for (auto& pc : out)
    if (pc.forcedLabelSet.size() > 1)
      throw std::logic_error(
          "path_components: conflicting forced labels in one component");
  return out;
}

/// Closure rules for a labelled box configuration:
///   (i)   a box below an I- weight forces a box there;
///   (ii)  a box below a type II weight forces a box there, unless the box
///         is a IIILine whose component label is exactly the line that
///         dies in the II quotient (the missing cylinder's axis);
///   (iii) the span of the lines pushed into a type III weight from below
///         must be contained in that weight's box subspace.
/// Unrestricted components carry a free generic label, so rules must hold
/// with their labels treated as indeterminate.
inline ValidationResult validate_configuration(const BoxConfiguration& c) {
  ValidationResult res;
  auto bad = [&](const std::string& rule, const Weight& w,
                 const std::string& detail) {
    res.violations.push_back({rule, w, detail});
  };

  for (auto& [w, t] : c.boxes) {
    auto cls = classify_weight(c.legs, w);
    bool ok = false;
    switch (t) {
      case BoxTag::IminusBox: ok = cls.tag == WeightTag::Iminus; break;
      case BoxTag::IIBox: ok = cls.tag == WeightTag::II; break;
      default: ok = cls.tag == WeightTag::III; break;
    }
    if (!ok)
      bad("support", w,
          box_tag_name(t) + " on a weight of the wrong class");
  }
  if (!res.violations.empty()) return res;  // rules assume sane support

  auto comps = detail_box::components_raw(c);
  std::map<Weight, int> compOf;
  for (auto& pc : comps) {
    if (pc.forcedLabelSet.size() > 1) {
      bad("forced-label", *pc.members.begin(),
          "component collects two distinct forced labels");
    }
    for (auto& w : pc.members) compOf[w] = pc.id;
  }

  using detail_box::LineRef;
  auto label_of = [&](int compId) -> LineRef {
    auto& pc = comps[compId];
    if (pc.forcedLabel) return LineRef{false, *pc.forcedLabel};
    return LineRef{true, compId};
  };

  // Span of induced lines at each type III weight.
  struct Span {
    bool full = false;
    std::set<LineRef> lines;
  };
  std::map<Weight, Span> spans;

  for (auto& [v, t] : c.boxes) {
    for (int i = 0; i < 3; ++i) {
      Weight w = weight_add(v, unit_weight(i));
      auto cls = classify_weight(c.legs, w);
      switch (cls.tag) {
        case WeightTag::Iminus:
          if (!c.boxes.count(w)) bad("i", w, "forced I- box missing");
          break;
        case WeightTag::II: {
          bool forces = true;
          if (t == BoxTag::IIILine) {
            LineRef l = label_of(compOf.at(v));
            // The missing cylinder's line maps to zero in the II quotient.
            if (!l.generic && l.index == cls.missing_axis()) forces = false;
          }
          if (forces && !c.boxes.count(w))
            bad("ii", w, "forced II box missing (pushed from " +
                             box_tag_name(t) + ")");
          break;
        }
        case WeightTag::III: {
          Span& sp = spans[w];
          switch (t) {
            case BoxTag::IIIFull: sp.full = true; break;
            case BoxTag::IIILine:
              sp.lines.insert(label_of(compOf.at(v)));
              break;
            case BoxTag::IminusBox:
              // The I- fiber pushes the line of its own cylinder, which
              // is necessarily the axis of approach.
              sp.lines.insert(LineRef{false, i});
              break;
            case BoxTag::IIBox:
              // A II weight can never sit below a III weight: cylinder
              // membership only shrinks under forward unit moves in the
              // non-negative octant.
              bad("iii", w, "II box below a III weight");
              break;
          }
          break;
        }
        default:
          break;  // I+ and outside carry a zero fiber: nothing to check
      }
    }
  }

  for (auto& [w, sp] : spans) {
    int dim = sp.full || sp.lines.size() >= 2 ? 2
              : sp.lines.empty()              ? 0
                                              : 1;
    auto it = c.boxes.find(w);
    BoxTag t = it == c.boxes.end() ? BoxTag::IminusBox : it->second;
    if (it == c.boxes.end()) {
      if (dim > 0) bad("iii", w, "forced III box missing");
    } else if (t == BoxTag::IIILine) {
      if (dim == 2) {
        bad("iii", w, "span is 2-dimensional but box is a line");
      } else if (dim == 1) {
        LineRef need = *sp.lines.begin();
        if (!(need == label_of(compOf.at(w))))
          bad("iii", w, "span line differs from the box label");
      }
    }
    // IIIFull contains every span.
  }

  res.valid = res.violations.empty();
  return res;
}

/// Discrete data of one connected component of the fixed locus.
struct ComponentRecord {
  BoxConfiguration config;
  std::vector<PathComponentInfo> pathComponents;
  int length = 0;
  int dimension = 0;  // number of unrestricted path components
  long eulerChar = 1;
};

inline ComponentRecord make_record(const BoxConfiguration& c) {
  ComponentRecord r;
  r.config = c;
  r.pathComponents = path_components(c);
  r.length = c.length();
  for (auto& pc : r.pathComponents)
    if (!pc.restricted) ++r.dimension;
  r.eulerChar = 1L << r.dimension;
  return r;
}

/// Search region for boxed weights: every coordinate lies in
/// [-maxLength, extent), where extent bounds all leg cross-sections.
/// Lower bound: an I- box at depth k forces a chain of k boxes back to
/// the coordinate hyperplanes by rule (i), so depth exceeding the length
/// budget is impossible.  Upper bound: II/III weights lie in >= 2
/// cylinders, so every coordinate is a cross-section index of some leg;
/// I- weights lie in exactly one cylinder, with cross-section coordinates
/// bounded the same way and the axis coordinate negative.
inline std::vector<Weight> candidate_weights(const LegTriple& legs,
                                             int maxLength) {
  std::vector<Weight> out;
  int e = legs.max_extent();
  for (int x = -maxLength; x < e; ++x)
    for (int y = -maxLength; y < e; ++y)
      for (int z = -maxLength; z < e; ++z) {
        Weight w{x, y, z};
        auto cls = classify_weight(legs, w);
        if (cls.tag == WeightTag::Iminus || cls.tag == WeightTag::II ||
            cls.tag == WeightTag::III)
          out.push_back(w);
      }
  return out;
}

/// All valid configurations with length <= maxLength, each exactly once,
/// sorted canonically.  Breadth-first search from the empty configuration
/// over single-box additions and line-to-full upgrades: every valid
/// configuration of length l has a valid sub-configuration of length l-1
/// (pass to the kernel of a map onto a simple quotient of the submodule),
/// so the search is exhaustive.
inline std::vector<ComponentRecord> enumerate_components(
    const LegTriple& legs, int maxLength) {
  std::vector<Weight> region = candidate_weights(legs, maxLength);
  std::set<std::map<Weight, BoxTag>> seen;
  std::deque<BoxConfiguration> queue;

  BoxConfiguration empty;
  empty.legs = legs;
  queue.push_back(empty);
  seen.insert(empty.boxes);

  std::vector<ComponentRecord> out;
  while (!queue.empty()) {
    BoxConfiguration cur = queue.front();
    queue.pop_front();
    out.push_back(make_record(cur));
    if (cur.length() >= maxLength) continue;
    for (auto& w : region) {
      auto it = cur.boxes.find(w);
      BoxConfiguration next = cur;
      if (it == cur.boxes.end()) {
        auto cls = classify_weight(legs, w);
        BoxTag t = cls.tag == WeightTag::Iminus ? BoxTag::IminusBox
                   : cls.tag == WeightTag::II   ? BoxTag::IIBox
                                                : BoxTag::IIILine;
        next.boxes[w] = t;
      } else if (it->second == BoxTag::IIILine) {
        next.boxes[w] = BoxTag::IIIFull;
      } else {
        continue;
      }
      if (seen.count(next.boxes)) continue;
      if (!validate_configuration(next).valid) continue;
      seen.insert(next.boxes);
      queue.push_back(next);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ComponentRecord& a, const ComponentRecord& b) {
              if (a.length != b.length) return a.length < b.length;
              return a.config < b.config;
            });
  return out;
}

/// Histogram of fixed-locus components by (length, dimension).
inline std::map<std::pair<int, int>, long> component_histogram(
    const std::vector<ComponentRecord>& recs) {
  std::map<std::pair<int, int>, long> h;
  for (auto& r : recs) ++h[{r.length, r.dimension}];
  return h;
}

}  // namespace ptvertex
