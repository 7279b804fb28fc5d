#pragma once

// Exact region algebra on the 1+1 Minkowski plane in light-cone coordinates
// u = t + x, v = t - x. Causal order: p before q iff u_p <= u_q and
// v_p <= v_q. Regions are finite unions of axis-aligned boxes with rational
// open/closed/infinite bounds, a class closed under past, future, spacelike
// complement and boolean set algebra.

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "creg/errors.hpp"
#include "creg/rational.hpp"

namespace creg {

// A position on the rational line squeezed between the reals: either just
// below or just above a rational pivot, or beyond every real. Encoding
// interval endpoints as cuts turns open/closed bookkeeping into plain
// ordering: [q.. starts at just_below(q), (q.. starts at just_above(q),
// ..q] ends at just_above(q), ..q) ends at just_below(q).
struct Cut {
  signed char inf = 0;  // -1 below everything, +1 above everything
  Rational at{};
  bool upper = false;  // just above `at` rather than just below

  static Cut neg_inf() { return Cut{-1, Rational(), false}; }
  static Cut pos_inf() { return Cut{+1, Rational(), false}; }
  static Cut just_below(const Rational& q) { return Cut{0, q, false}; }
  static Cut just_above(const Rational& q) { return Cut{0, q, true}; }

  friend bool operator==(const Cut& a, const Cut& b) {
    if (a.inf != b.inf) return false;
    if (a.inf != 0) return true;
    return a.upper == b.upper && a.at == b.at;
  }
  friend bool operator!=(const Cut& a, const Cut& b) { return !(a == b); }
  friend bool operator<(const Cut& a, const Cut& b) {
    if (a.inf != b.inf) return a.inf < b.inf;
    if (a.inf != 0) return false;
    if (a.at != b.at) return a.at < b.at;
    return !a.upper && b.upper;
  }
  friend bool operator<=(const Cut& a, const Cut& b) { return !(b < a); }

  // the cut lies below the real x
  bool below_value(const Rational& x) const {
    if (inf != 0) return inf < 0;
    return at < x || (at == x && !upper);
  }
  // the cut lies above the real x
  bool above_value(const Rational& x) const {
    if (inf != 0) return inf > 0;
    return at > x || (at == x && upper);
  }
};

// The reals strictly between two cuts.
struct CutInterval {
  Cut lo, hi;

  bool empty() const { return !(lo < hi); }
  bool contains(const Rational& x) const {
    return lo.below_value(x) && hi.above_value(x);
  }
  friend bool operator==(const CutInterval& a, const CutInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
  friend bool operator!=(const CutInterval& a, const CutInterval& b) {
    return !(a == b);
  }
};

// One endpoint of a box side: a rational with a closed flag, or infinite.
struct Bound {
  signed char inf = 0;  // -1 / +1 for the two infinities
  Rational value{};
  bool closed = false;

  static Bound minus_infinity() { return Bound{-1, Rational(), false}; }
  static Bound plus_infinity() { return Bound{+1, Rational(), false}; }
  static Bound closed_at(const Rational& q) { return Bound{0, q, true}; }
  static Bound open_at(const Rational& q) { return Bound{0, q, false}; }
};

inline Cut lower_cut(const Bound& b) {
  if (b.inf != 0) return b.inf < 0 ? Cut::neg_inf() : Cut::pos_inf();
  return b.closed ? Cut::just_below(b.value) : Cut::just_above(b.value);
}

inline Cut upper_cut(const Bound& b) {
  if (b.inf != 0) return b.inf < 0 ? Cut::neg_inf() : Cut::pos_inf();
  return b.closed ? Cut::just_above(b.value) : Cut::just_below(b.value);
}

struct Box {
  Bound u_lo, u_hi, v_lo, v_hi;

  CutInterval u_interval() const {
    return CutInterval{lower_cut(u_lo), upper_cut(u_hi)};
  }
  CutInterval v_interval() const {
    return CutInterval{lower_cut(v_lo), upper_cut(v_hi)};
  }
};

inline Box make_box(Bound u_lo, Bound u_hi, Bound v_lo, Bound v_hi) {
  if ((u_lo.inf != 0 && u_lo.closed) || (u_hi.inf != 0 && u_hi.closed) ||
      (v_lo.inf != 0 && v_lo.closed) || (v_hi.inf != 0 && v_hi.closed))
    throw std::invalid_argument("infinite bound marked closed");
  const Box b{u_lo, u_hi, v_lo, v_hi};
  if (b.u_interval().empty() || b.v_interval().empty())
    throw std::invalid_argument("empty box");
  return b;
}

namespace detail {

// Sets of reals on one axis: sorted disjoint non-adjacent cut intervals.

inline std::vector<CutInterval> merge_line(std::vector<CutInterval> xs) {
  std::erase_if(xs, [](const CutInterval& x) { return x.empty(); });
  std::sort(xs.begin(), xs.end(), [](const CutInterval& a, const CutInterval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  std::vector<CutInterval> out;
  for (const CutInterval& x : xs) {
    if (!out.empty() && x.lo <= out.back().hi) {
      if (out.back().hi < x.hi) out.back().hi = x.hi;
    } else {
      out.push_back(x);
    }
  }
  return out;
}

inline std::vector<CutInterval> complement_line(
    const std::vector<CutInterval>& xs) {
  std::vector<CutInterval> out;
  Cut prev = Cut::neg_inf();
  for (const CutInterval& x : xs) {
    if (prev < x.lo) out.push_back(CutInterval{prev, x.lo});
    prev = x.hi;
  }
  if (prev < Cut::pos_inf()) out.push_back(CutInterval{prev, Cut::pos_inf()});
  return out;
}

inline std::vector<CutInterval> intersect_line(
    const std::vector<CutInterval>& a, const std::vector<CutInterval>& b) {
  std::vector<CutInterval> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const Cut lo = std::max(a[i].lo, b[j].lo);
    const Cut hi = std::min(a[i].hi, b[j].hi);
    if (lo < hi) out.push_back(CutInterval{lo, hi});
    if (a[i].hi < b[j].hi)
      ++i;
    else
      ++j;
  }
  return out;
}

inline std::vector<CutInterval> subtract_line(
    const std::vector<CutInterval>& a, const std::vector<CutInterval>& b) {
  return intersect_line(a, complement_line(b));
}

}  // namespace detail

// A maximal run of u values sharing one v-set.
struct Slab {
  CutInterval u;
  std::vector<CutInterval> v;

  friend bool operator==(const Slab& a, const Slab& b) {
    return a.u == b.u && a.v == b.v;
  }
};

// Canonical vertical-slab decomposition: slab u-intervals are sorted,
// disjoint, and maximal (no two adjacent slabs share a v-set); each v-set is
// a canonical line set. Two regions are equal as point sets iff their slab
// lists are identical, so operator== is structural.
class MinkRegion {
 public:
  MinkRegion() = default;

  static MinkRegion from_boxes(const std::vector<Box>& boxes) {
    std::vector<Slab> raw;
    for (const Box& b : boxes) {
      make_box(b.u_lo, b.u_hi, b.v_lo, b.v_hi);
      raw.push_back(Slab{b.u_interval(), {b.v_interval()}});
    }
    return canonicalize(raw);
  }

  static MinkRegion whole_plane() {
    return canonicalize({Slab{CutInterval{Cut::neg_inf(), Cut::pos_inf()},
                              {CutInterval{Cut::neg_inf(), Cut::pos_inf()}}}});
  }

  const std::vector<Slab>& slabs() const { return slabs_; }
  bool empty() const { return slabs_.empty(); }

  bool contains(const Rational& u, const Rational& v) const {
    for (const Slab& s : slabs_) {
      if (!s.u.contains(u)) continue;
      for (const CutInterval& iv : s.v)
        if (iv.contains(v)) return true;
      return false;
    }
    return false;
  }

  friend bool operator==(const MinkRegion& a, const MinkRegion& b) {
    return a.slabs_ == b.slabs_;
  }
  friend bool operator!=(const MinkRegion& a, const MinkRegion& b) {
    return !(a == b);
  }

  // Union of arbitrary, possibly overlapping slabs.
  static MinkRegion canonicalize(const std::vector<Slab>& raw) {
    std::vector<Cut> cuts;
    for (const Slab& s : raw) {
      cuts.push_back(s.u.lo);
      cuts.push_back(s.u.hi);
    }
    MinkRegion out;
    for (const CutInterval& piece : elementary(cuts)) {
      std::vector<CutInterval> line;
      for (const Slab& s : raw)
        if (s.u.lo <= piece.lo && piece.hi <= s.u.hi)
          line.insert(line.end(), s.v.begin(), s.v.end());
      out.append_slab(piece, detail::merge_line(std::move(line)));
    }
    return out;
  }

  template <typename LineOp>
  static MinkRegion combine(const MinkRegion& a, const MinkRegion& b,
                            LineOp&& op) {
    std::vector<Cut> cuts;
    for (const Slab& s : a.slabs_) {
      cuts.push_back(s.u.lo);
      cuts.push_back(s.u.hi);
    }
    for (const Slab& s : b.slabs_) {
      cuts.push_back(s.u.lo);
      cuts.push_back(s.u.hi);
    }
    MinkRegion out;
    std::size_t ia = 0, ib = 0;
    static const std::vector<CutInterval> none;
    for (const CutInterval& piece : elementary(cuts)) {
      while (ia < a.slabs_.size() && a.slabs_[ia].u.hi <= piece.lo) ++ia;
      while (ib < b.slabs_.size() && b.slabs_[ib].u.hi <= piece.lo) ++ib;
      const bool in_a = ia < a.slabs_.size() &&
                        a.slabs_[ia].u.lo <= piece.lo &&
                        piece.hi <= a.slabs_[ia].u.hi;
      const bool in_b = ib < b.slabs_.size() &&
                        b.slabs_[ib].u.lo <= piece.lo &&
                        piece.hi <= b.slabs_[ib].u.hi;
      out.append_slab(piece, op(in_a ? a.slabs_[ia].v : none,
                                in_b ? b.slabs_[ib].v : none));
    }
    return out;
  }

 private:
  std::vector<Slab> slabs_;

  // Nonempty intervals tiling the whole line, with every given cut on a
  // boundary.
  static std::vector<CutInterval> elementary(std::vector<Cut> cuts) {
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<CutInterval> out;
    Cut prev = Cut::neg_inf();
    for (const Cut& c : cuts) {
      if (prev < c) out.push_back(CutInterval{prev, c});
      prev = c;
    }
    if (prev < Cut::pos_inf())
      out.push_back(CutInterval{prev, Cut::pos_inf()});
    return out;
  }

  void append_slab(const CutInterval& u, std::vector<CutInterval> line) {
    if (line.empty()) return;
    if (!slabs_.empty() && slabs_.back().u.hi == u.lo &&
        slabs_.back().v == line) {
      slabs_.back().u.hi = u.hi;
      return;
    }
    slabs_.push_back(Slab{u, std::move(line)});
  }
};

inline MinkRegion region_union(const MinkRegion& a, const MinkRegion& b) {
  return MinkRegion::combine(
      a, b, [](const std::vector<CutInterval>& x, const std::vector<CutInterval>& y) {
        std::vector<CutInterval> both = x;
        both.insert(both.end(), y.begin(), y.end());
        return detail::merge_line(std::move(both));
      });
}

inline MinkRegion region_intersect(const MinkRegion& a, const MinkRegion& b) {
  return MinkRegion::combine(a, b, detail::intersect_line);
}

inline MinkRegion region_difference(const MinkRegion& a, const MinkRegion& b) {
  return MinkRegion::combine(a, b, detail::subtract_line);
}

// J^-(R): down-set in the product order. For a single piece I x J it is
// (-inf, sup I) x (-inf, sup J) with attainment carried by the cuts, and a
// union maps to the union of piece down-sets.
inline MinkRegion causal_past(const MinkRegion& r) {
  std::vector<Slab> raw;
  for (const Slab& s : r.slabs())
    for (const CutInterval& iv : s.v)
      raw.push_back(Slab{CutInterval{Cut::neg_inf(), s.u.hi},
                         {CutInterval{Cut::neg_inf(), iv.hi}}});
  return MinkRegion::canonicalize(raw);
}

inline MinkRegion causal_future(const MinkRegion& r) {
  std::vector<Slab> raw;
  for (const Slab& s : r.slabs())
    for (const CutInterval& iv : s.v)
      raw.push_back(Slab{CutInterval{s.u.lo, Cut::pos_inf()},
                         {CutInterval{iv.lo, Cut::pos_inf()}}});
  return MinkRegion::canonicalize(raw);
}

// R': points comparable with nothing in R.
inline MinkRegion spacelike_complement(const MinkRegion& r) {
  return region_difference(
      region_difference(MinkRegion::whole_plane(), causal_past(r)),
      causal_future(r));
}

inline MinkRegion causal_closure(const MinkRegion& r) {
  return spacelike_complement(spacelike_complement(r));
}

inline bool contains_own_past(const MinkRegion& r) {
  return region_difference(causal_past(r), r).empty();
}

inline bool is_causally_infinite_rsp(const MinkRegion& r) {
  return contains_own_past(causal_closure(r));
}

namespace detail {

inline std::string format_lo(const Cut& c) {
  if (c.inf != 0) return c.inf < 0 ? "(-inf" : "(inf";
  return (c.upper ? "(" : "[") + c.at.to_string();
}

inline std::string format_hi(const Cut& c) {
  if (c.inf != 0) return c.inf < 0 ? "-inf)" : "inf)";
  return c.at.to_string() + (c.upper ? "]" : ")");
}

inline std::string format_interval(const CutInterval& iv) {
  return format_lo(iv.lo) + ", " + format_hi(iv.hi);
}

// "u>=0 & u<=1" style conjunction for one axis; empty when unconstrained.
inline std::vector<std::string> axis_atoms(const char* name,
                                           const CutInterval& iv) {
  std::vector<std::string> out;
  if (iv.lo.inf == 0 && iv.hi.inf == 0 && iv.lo.at == iv.hi.at) {
    out.push_back(std::string(name) + "=" + iv.lo.at.to_string());
    return out;
  }
  if (iv.lo.inf == 0)
    out.push_back(std::string(name) + (iv.lo.upper ? ">" : ">=") +
                  iv.lo.at.to_string());
  if (iv.hi.inf == 0)
    out.push_back(std::string(name) + (iv.hi.upper ? "<=" : "<") +
                  iv.hi.at.to_string());
  return out;
}

}  // namespace detail

// Interval-notation rendering, one line per slab.
inline std::string to_string(const MinkRegion& r) {
  if (r.empty()) return "empty";
  std::string out;
  for (const Slab& s : r.slabs()) {
    if (!out.empty()) out += '\n';
    out += "u in " + detail::format_interval(s.u) + ": v in ";
    for (std::size_t i = 0; i < s.v.size(); ++i) {
      if (i) out += " | ";
      out += detail::format_interval(s.v[i]);
    }
  }
  return out;
}

// Round-trippable constraint syntax: slabs joined by |, each slab a
// conjunction of u atoms with the v-set (a | of conjunctions) parenthesized
// as needed. "all" and "empty" for the extremes.
inline std::string to_expression(const MinkRegion& r) {
  if (r.empty()) return "empty";
  std::vector<std::string> slab_terms;
  for (const Slab& s : r.slabs()) {
    const std::vector<std::string> us = detail::axis_atoms("u", s.u);
    std::vector<std::string> vparts;
    for (const CutInterval& iv : s.v) {
      const std::vector<std::string> vs = detail::axis_atoms("v", iv);
      std::string part;
      for (const std::string& a : vs) {
        if (!part.empty()) part += " & ";
        part += a;
      }
      vparts.push_back(part);
    }
    std::string term;
    for (const std::string& a : us) {
      if (!term.empty()) term += " & ";
      term += a;
    }
    const bool v_unconstrained = vparts.size() == 1 && vparts[0].empty();
    if (!v_unconstrained) {
      std::string vexpr;
      for (std::size_t i = 0; i < vparts.size(); ++i) {
        if (i) vexpr += " | ";
        vexpr += vparts[i];
      }
      if (!term.empty()) {
        term += " & ";
        term += vparts.size() > 1 ? "(" + vexpr + ")" : vexpr;
      } else {
        term = vexpr;
      }
    }
    if (term.empty()) term = "all";
    slab_terms.push_back(term);
  }
  if (slab_terms.size() == 1) return slab_terms[0];
  std::string out;
  for (const std::string& t : slab_terms) {
    if (!out.empty()) out += " | ";
    const bool needs_parens = t.find(" | ") != std::string::npos ||
                              t.find(" & ") != std::string::npos;
    out += needs_parens ? "(" + t + ")" : t;
  }
  return out;
}

}  // namespace creg
