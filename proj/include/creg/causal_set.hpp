#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "creg/errors.hpp"

namespace creg {

// A set of points on a finite causal site, stored as a bitmask over the
// site's point indices.
using PointMask = std::uint64_t;

// Finite causal set: labeled points with a reflexive, antisymmetric,
// transitive relation p <= q ("p causally precedes q"). Immutable once
// built; the relation is stored transitively closed in both directions.
class CausalSet {
 public:
  static constexpr int max_points = 64;

  CausalSet() = default;

  // Reflexive-transitive closure of the given pairs. Throws CycleError if
  // the closure would relate two distinct points both ways.
  static CausalSet build(
      std::vector<std::string> points,
      const std::vector<std::pair<std::string, std::string>>& relations) {
    CausalSet s;
    s.init_labels(std::move(points));
    const int n = s.size();
    s.up_.assign(n, 0);
    for (int i = 0; i < n; ++i) s.up_[i] = PointMask{1} << i;
    for (const auto& [from, to] : relations) {
      const int p = s.index(from);
      const int q = s.index(to);
      s.up_[p] |= PointMask{1} << q;
    }
    s.close_and_check();
    return s;
  }

  // Builds from per-point down-sets (each including the point itself),
  // which must already be a valid partial order.
  static CausalSet from_down_masks(std::vector<std::string> points,
                                   const std::vector<PointMask>& down) {
    CausalSet s;
    s.init_labels(std::move(points));
    const int n = s.size();
    if ((int)down.size() != n)
      throw std::invalid_argument("down-set count does not match point count");
    s.up_.assign(n, 0);
    for (int q = 0; q < n; ++q) {
      if ((down[q] & (PointMask{1} << q)) == 0)
        throw std::invalid_argument("down-set must contain its own point");
      if (n < 64 && (down[q] >> n) != 0)
        throw std::invalid_argument("down-set references unknown points");
      for (int p = 0; p < n; ++p)
        if (down[q] & (PointMask{1} << p)) s.up_[p] |= PointMask{1} << q;
    }
    s.close_and_check();
    return s;
  }

  int size() const { return (int)labels_.size(); }
  const std::string& label(int i) const { return labels_[(std::size_t)i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  int index(std::string_view label) const {
    for (int i = 0; i < size(); ++i)
      if (labels_[(std::size_t)i] == label) return i;
    throw std::invalid_argument("unknown point label '" + std::string(label) +
                                "'");
  }

  bool has_label(std::string_view label) const {
    for (const auto& l : labels_)
      if (l == label) return true;
    return false;
  }

  bool leq(int p, int q) const { return (up_[(std::size_t)p] >> q) & 1; }
  bool comparable(int p, int q) const { return leq(p, q) || leq(q, p); }

  // All points below / above a single point, including the point.
  PointMask down_mask(int q) const { return down_[(std::size_t)q]; }
  PointMask up_mask(int p) const { return up_[(std::size_t)p]; }

  PointMask all_mask() const {
    return size() == 64 ? ~PointMask{0} : (PointMask{1} << size()) - 1;
  }

  // All non-reflexive related pairs, in index order.
  std::vector<std::pair<std::string, std::string>> relation_pairs() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (int p = 0; p < size(); ++p)
      for (int q = 0; q < size(); ++q)
        if (p != q && leq(p, q)) out.emplace_back(label(p), label(q));
    return out;
  }

  friend bool operator==(const CausalSet& a, const CausalSet& b) {
    return a.labels_ == b.labels_ && a.up_ == b.up_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<PointMask> up_;    // up_[p] = {q : p <= q}
  std::vector<PointMask> down_;  // down_[q] = {p : p <= q}

  void init_labels(std::vector<std::string> points) {
    if (points.size() > max_points)
      throw std::invalid_argument("causal set limited to 64 points");
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        if (points[i] == points[j])
          throw std::invalid_argument("duplicate point label '" + points[i] +
                                      "'");
    labels_ = std::move(points);
  }

  void close_and_check() {
    const int n = size();
    for (int k = 0; k < n; ++k)
      for (int p = 0; p < n; ++p)
        if ((up_[(std::size_t)p] >> k) & 1) up_[(std::size_t)p] |= up_[(std::size_t)k];
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q)
        if (leq(p, q) && leq(q, p))
          throw CycleError("causal loop between '" + label(p) + "' and '" +
                           label(q) + "'");
    down_.assign((std::size_t)n, 0);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (leq(p, q)) down_[(std::size_t)q] |= PointMask{1} << p;
  }
};

// A subset of one causal set's points.
struct Region {
  const CausalSet* site = nullptr;
  PointMask members = 0;

  friend bool operator==(const Region& a, const Region& b) {
    return a.site == b.site && a.members == b.members;
  }
};

inline Region make_region(const CausalSet& site, PointMask members) {
  if ((members & ~site.all_mask()) != 0)
    throw std::invalid_argument("region members outside the site");
  return Region{&site, members};
}

inline Region make_region(const CausalSet& site,
                          std::initializer_list<std::string_view> labels) {
  PointMask m = 0;
  for (auto l : labels) m |= PointMask{1} << site.index(l);
  return Region{&site, m};
}

namespace detail {
inline const CausalSet& site_of(const Region& r) {
  if (r.site == nullptr) throw std::invalid_argument("region without a site");
  return *r.site;
}
inline const CausalSet& common_site(const Region& a, const Region& b) {
  const CausalSet& s = site_of(a);
  if (b.site != a.site)
    throw std::invalid_argument("regions live on different sites");
  return s;
}
}  // namespace detail

// Mask-level operator kernels, shared by the Region wrappers below and by
// the model checkers' inner loops.

inline PointMask past_mask(const CausalSet& s, PointMask m) {
  PointMask past = 0;
  for (int q = 0; q < s.size(); ++q)
    if (m & (PointMask{1} << q)) past |= s.down_mask(q);
  return past;
}

inline PointMask future_mask(const CausalSet& s, PointMask m) {
  PointMask fut = 0;
  for (int p = 0; p < s.size(); ++p)
    if (m & (PointMask{1} << p)) fut |= s.up_mask(p);
  return fut;
}

inline PointMask spacelike_complement_mask(const CausalSet& s, PointMask m) {
  return s.all_mask() & ~(past_mask(s, m) | future_mask(s, m));
}

inline PointMask causal_closure_mask(const CausalSet& s, PointMask m) {
  return spacelike_complement_mask(s, spacelike_complement_mask(s, m));
}

inline bool is_causally_infinite_rsp_mask(const CausalSet& s, PointMask m) {
  const PointMask c = causal_closure_mask(s, m);
  return (past_mask(s, c) & ~c) == 0;
}

// J^-(R): every point below some member of R (includes R, the order being
// reflexive).
inline Region causal_past(const Region& r) {
  const CausalSet& s = detail::site_of(r);
  return Region{&s, past_mask(s, r.members)};
}

// J^+(R): every point above some member of R.
inline Region causal_future(const Region& r) {
  const CausalSet& s = detail::site_of(r);
  return Region{&s, future_mask(s, r.members)};
}

// R': the points incomparable with every member of R.
inline Region spacelike_complement(const Region& r) {
  const CausalSet& s = detail::site_of(r);
  return Region{&s, spacelike_complement_mask(s, r.members)};
}

// R'' = (R')'.
inline Region causal_closure(const Region& r) {
  const CausalSet& s = detail::site_of(r);
  return Region{&s, causal_closure_mask(s, r.members)};
}

// Redei / san Pedro test: R is causally infinite iff its causal closure
// contains its own causal past.
inline bool is_causally_infinite_rsp(const Region& r) {
  return is_causally_infinite_rsp_mask(detail::site_of(r), r.members);
}

// True iff every member of A is incomparable with every member of B
// (vacuously true when either is empty).
inline bool are_spacelike(const Region& a, const Region& b) {
  detail::common_site(a, b);
  const PointMask reach = causal_past(a).members | causal_future(a).members;
  return (reach & b.members) == 0;
}

namespace detail {
inline void require_spacelike(const Region& a, const Region& b) {
  if (!are_spacelike(a, b))
    throw NotSpacelike("regions are not spacelike separated");
}
}  // namespace detail

// P1 = J^-(A) & J^-(B). Requires spacelike A, B.
inline Region mutual_past(const Region& a, const Region& b) {
  const CausalSet& s = detail::common_site(a, b);
  detail::require_spacelike(a, b);
  return Region{&s, causal_past(a).members & causal_past(b).members};
}

// P2 = (J^-(A) | J^-(B)) \ (A | B). Requires spacelike A, B.
inline Region joint_past(const Region& a, const Region& b) {
  const CausalSet& s = detail::common_site(a, b);
  detail::require_spacelike(a, b);
  return Region{&s, (causal_past(a).members | causal_past(b).members) &
                        ~(a.members | b.members)};
}

// The joint past split into three disjoint parts: the mutual past, the part
// seen only from A, and the part seen only from B.
struct PastDecomposition {
  Region mutual;  // J^-(A) & J^-(B)
  Region only_a;  // J^-(A) \ (J^-(B) | A)
  Region only_b;  // J^-(B) \ (J^-(A) | B)
};

inline PastDecomposition region_decomposition(const Region& a,
                                              const Region& b) {
  const CausalSet& s = detail::common_site(a, b);
  detail::require_spacelike(a, b);
  const PointMask pa = causal_past(a).members;
  const PointMask pb = causal_past(b).members;
  return PastDecomposition{Region{&s, pa & pb},
                           Region{&s, pa & ~(pb | a.members)},
                           Region{&s, pb & ~(pa | b.members)}};
}

// Points with nothing strictly below them; stands in for the initial
// hypersurface of the site.
inline Region minimal_points(const CausalSet& s) {
  PointMask m = 0;
  for (int p = 0; p < s.size(); ++p)
    if (s.down_mask(p) == (PointMask{1} << p)) m |= PointMask{1} << p;
  return Region{&s, m};
}

// "{a, b, c}" in point-index order.
inline std::string format_region(const Region& r) {
  const CausalSet& s = detail::site_of(r);
  std::string out = "{";
  bool first = true;
  for (int p = 0; p < s.size(); ++p)
    if (r.members & (PointMask{1} << p)) {
      if (!first) out += ", ";
      out += s.label(p);
      first = false;
    }
  return out + "}";
}

}  // namespace creg
