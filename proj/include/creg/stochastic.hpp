#pragma once

// Probabilistic events over a finite causal site. A model attaches to each
// point of the site one partition of a common finite sample space; the
// algebra of a region is generated by its points' partitions, so a "full
// specification" of a region is an atom of that algebra. All probability
// arithmetic is exact rational; correlations are compared to zero exactly.

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "creg/causal_set.hpp"
#include "creg/errors.hpp"
#include "creg/rational.hpp"

namespace creg {

// Subsets of the sample space, one bit per atom.
using EventMask = std::uint64_t;

struct StochasticCausalModel {
  CausalSet site;
  std::vector<std::string> outcomes;          // atom labels of the space
  std::vector<Rational> measure;              // per atom, sums to 1
  std::vector<std::vector<EventMask>> local_partition;  // per point: blocks

  int omega_size() const { return (int)outcomes.size(); }
  EventMask omega_mask() const {
    return omega_size() == 64 ? ~EventMask{0}
                              : (EventMask{1} << omega_size()) - 1;
  }
  int outcome_index(std::string_view label) const {
    for (int i = 0; i < omega_size(); ++i)
      if (outcomes[(std::size_t)i] == label) return i;
    throw std::invalid_argument("unknown outcome label '" +
                                std::string(label) + "'");
  }
};

inline EventMask outcome_mask(const StochasticCausalModel& m,
                              const std::vector<std::string>& labels) {
  EventMask e = 0;
  for (const std::string& l : labels)
    e |= EventMask{1} << m.outcome_index(l);
  return e;
}

inline std::vector<std::string> validate_model(
    const StochasticCausalModel& m) {
  std::vector<std::string> errors;
  const int n = m.omega_size();
  if (n < 1 || n > 64)
    errors.push_back("sample space must have between 1 and 64 outcomes");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m.outcomes[(std::size_t)i] == m.outcomes[(std::size_t)j])
        errors.push_back("duplicate outcome label '" +
                         m.outcomes[(std::size_t)i] + "'");
  if ((int)m.measure.size() != n) {
    errors.push_back("measure must assign a weight to every outcome");
  } else {
    Rational sum;
    bool negative = false;
    for (const Rational& w : m.measure) {
      if (w < Rational(0)) negative = true;
      sum = sum + w;
    }
    if (negative) errors.push_back("negative outcome weight");
    if (sum != Rational(1))
      errors.push_back("measure sums to " + sum.to_string() + ", not 1");
  }
  if ((int)m.local_partition.size() != m.site.size()) {
    errors.push_back("need one outcome partition per point of the site");
  } else if (n >= 1 && n <= 64) {
    for (int p = 0; p < m.site.size(); ++p) {
      EventMask seen = 0;
      bool ok = true;
      for (const EventMask block : m.local_partition[(std::size_t)p]) {
        if (block == 0) {
          errors.push_back("empty block in the partition at point '" +
                           m.site.label(p) + "'");
          ok = false;
        }
        if (block & ~m.omega_mask()) {
          errors.push_back("partition block at point '" + m.site.label(p) +
                           "' references unknown outcomes");
          ok = false;
        }
        if (block & seen) {
          errors.push_back("overlapping blocks in the partition at point '" +
                           m.site.label(p) + "'");
          ok = false;
        }
        seen |= block;
      }
      if (ok && seen != m.omega_mask())
        errors.push_back("partition at point '" + m.site.label(p) +
                         "' does not cover the sample space");
    }
  }
  return errors;
}

inline void require_valid(const StochasticCausalModel& m) {
  const std::vector<std::string> errors = validate_model(m);
  if (errors.empty()) return;
  std::string msg = "invalid model";
  for (const std::string& e : errors) msg += "\n  " + e;
  throw std::invalid_argument(msg);
}

// An event together with the region it is decidable in, when declared.
struct EventExpr {
  EventMask event = 0;
  bool has_region = false;
  PointMask region = 0;
};

struct FullSpecification {
  PointMask region = 0;
  EventMask event = 0;
};

inline Rational prob(const StochasticCausalModel& m, EventMask e) {
  Rational sum;
  for (int i = 0; i < m.omega_size(); ++i)
    if (e & (EventMask{1} << i)) sum = sum + m.measure[(std::size_t)i];
  return sum;
}

inline Rational cond_prob(const StochasticCausalModel& m, EventMask e,
                          EventMask f) {
  const Rational pf = prob(m, f);
  if (pf == Rational(0))
    throw ZeroConditioningEvent("conditioning event has measure zero");
  return prob(m, e & f) / pf;
}

// P(A and B | F) - P(A|F) P(B|F)
inline Rational correlation(const StochasticCausalModel& m, EventMask a,
                            EventMask b, EventMask f) {
  const Rational pf = prob(m, f);
  if (pf == Rational(0))
    throw ZeroConditioningEvent("conditioning event has measure zero");
  return prob(m, a & b & f) / pf -
         (prob(m, a & f) / pf) * (prob(m, b & f) / pf);
}

// Atoms of the algebra generated by the partitions of the region's points.
// The empty region generates the trivial algebra, whose only atom is the
// whole space.
inline std::vector<FullSpecification> full_specifications(
    const StochasticCausalModel& m, PointMask region) {
  std::vector<EventMask> atoms{m.omega_mask()};
  for (int p = 0; p < m.site.size(); ++p) {
    if (!(region & (PointMask{1} << p))) continue;
    std::vector<EventMask> refined;
    for (const EventMask atom : atoms)
      for (const EventMask block : m.local_partition[(std::size_t)p])
        if (atom & block) refined.push_back(atom & block);
    atoms = std::move(refined);
  }
  std::vector<FullSpecification> out;
  out.reserve(atoms.size());
  for (const EventMask a : atoms) out.push_back(FullSpecification{region, a});
  return out;
}

// E lies in the algebra of R iff every atom is fully inside or fully
// outside E.
inline bool decidable_in(const StochasticCausalModel& m, EventMask e,
                         PointMask region) {
  for (const FullSpecification& f : full_specifications(m, region)) {
    const EventMask overlap = f.event & e;
    if (overlap != 0 && overlap != f.event) return false;
  }
  return true;
}

inline EventExpr make_event(const StochasticCausalModel& m, EventMask e) {
  if (e & ~m.omega_mask())
    throw std::invalid_argument("event references unknown outcomes");
  return EventExpr{e, false, 0};
}

inline EventExpr make_event(const StochasticCausalModel& m, EventMask e,
                            PointMask region) {
  if (e & ~m.omega_mask())
    throw std::invalid_argument("event references unknown outcomes");
  if (!decidable_in(m, e, region))
    throw std::invalid_argument("event is not decidable in its region");
  return EventExpr{e, true, region};
}

namespace detail {

// Integer fast path: outcome weights rescaled to a common denominator so
// that correlation-vanishing becomes one cross-multiplication in 128 bits.
// Falls back to rational arithmetic when the common denominator would not
// fit.
struct ScaledWeights {
  bool exact = false;
  std::vector<std::int64_t> w;

  static ScaledWeights build(const std::vector<Rational>& measure) {
    ScaledWeights s;
    std::int64_t common = 1;
    for (const Rational& r : measure) {
      const std::int64_t g = std::gcd(common, r.den());
      const __int128 next = (__int128)(common / g) * r.den();
      if (next > (std::int64_t{1} << 62)) return s;  // stay on rationals
      common = (std::int64_t)next;
    }
    s.w.reserve(measure.size());
    for (const Rational& r : measure)
      s.w.push_back(r.num() * (common / r.den()));
    s.exact = true;
    return s;
  }

  std::int64_t sum(EventMask e) const {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (e & (EventMask{1} << i)) total += w[i];
    return total;
  }
};

inline bool correlation_is_zero(const StochasticCausalModel& m,
                                const ScaledWeights& sw, EventMask a,
                                EventMask b, EventMask f) {
  if (sw.exact) {
    const std::int64_t nf = sw.sum(f);
    const std::int64_t nab = sw.sum(a & b & f);
    const std::int64_t na = sw.sum(a & f);
    const std::int64_t nb = sw.sum(b & f);
    return (__int128)nab * nf == (__int128)na * nb;
  }
  return correlation(m, a, b, f) == Rational(0);
}

}  // namespace detail

// A and B are screened off by R when they are uncorrelated given every
// positive-measure full specification of R. Measure-zero specifications are
// skipped: conditioning on them is undefined.
inline bool screens_off(const StochasticCausalModel& m, EventMask a,
                        EventMask b, PointMask region) {
  const detail::ScaledWeights sw = detail::ScaledWeights::build(m.measure);
  for (const FullSpecification& f : full_specifications(m, region)) {
    if (prob(m, f.event) == Rational(0)) continue;
    if (!detail::correlation_is_zero(m, sw, a, b, f.event)) return false;
  }
  return true;
}

enum class PastChoice { mutual, joint };
enum class Eligibility { all, rsp_finite, so2w };

struct ConditionVariant {
  PastChoice past = PastChoice::mutual;
  Eligibility eligibility = Eligibility::all;
};

inline ConditionVariant variant_by_name(std::string_view name) {
  if (name == "so1") return {PastChoice::mutual, Eligibility::all};
  if (name == "so2") return {PastChoice::joint, Eligibility::all};
  if (name == "finite-so1")
    return {PastChoice::mutual, Eligibility::rsp_finite};
  if (name == "finite-so2")
    return {PastChoice::joint, Eligibility::rsp_finite};
  if (name == "so2w") return {PastChoice::joint, Eligibility::so2w};
  throw std::invalid_argument("unknown condition '" + std::string(name) +
                              "' (expected so1, so2, finite-so1, finite-so2, "
                              "or so2w)");
}

struct Violation {
  PointMask region_a = 0, region_b = 0;
  EventMask event_a = 0, event_b = 0;
  PointMask past_region = 0;
  EventMask full_spec = 0;
  Rational p_joint;    // P(A and B | F)
  Rational p_product;  // P(A|F) P(B|F)
};

struct CheckReport {
  std::string condition;
  bool holds = true;
  std::vector<Violation> violations;
  std::uint64_t pairs_examined = 0;
  std::uint64_t specs_examined = 0;
};

// Quantifies over all ordered pairs of nonempty spacelike regions passing
// the variant's eligibility, over the atoms of each region's algebra (which
// suffices for all decidable events, by bilinearity of the correlation in A
// and B), and over all positive-measure full specifications of the variant's
// past region.
inline CheckReport check_condition(const StochasticCausalModel& m,
                                   ConditionVariant v, std::string name,
                                   bool early_exit = false) {
  const int n = m.site.size();
  if (n > 20)
    throw CapExceeded("site too large for exhaustive region-pair checking");
  CheckReport report;
  report.condition = std::move(name);

  const detail::ScaledWeights sw = detail::ScaledWeights::build(m.measure);
  const PointMask minimal = minimal_points(m.site).members;
  std::map<PointMask, std::vector<FullSpecification>> atom_cache;
  const auto atoms_of = [&](PointMask r) -> const std::vector<FullSpecification>& {
    auto it = atom_cache.find(r);
    if (it == atom_cache.end())
      it = atom_cache.emplace(r, full_specifications(m, r)).first;
    return it->second;
  };

  const PointMask all = m.site.all_mask();
  for (PointMask a = 1; a <= all && a != 0; ++a) {
    if (v.eligibility == Eligibility::rsp_finite &&
        is_causally_infinite_rsp_mask(m.site, a))
      continue;
    if (v.eligibility == Eligibility::so2w && (a & minimal)) continue;
    const PointMask pa = past_mask(m.site, a);
    const PointMask allowed = spacelike_complement_mask(m.site, a);
    if (allowed == 0) continue;
    for (PointMask b = allowed;; b = (b - 1) & allowed) {
      if (b == 0) break;
      if (v.eligibility == Eligibility::rsp_finite &&
          is_causally_infinite_rsp_mask(m.site, b))
        continue;
      if (v.eligibility == Eligibility::so2w && (b & minimal)) continue;
      const PointMask pb = past_mask(m.site, b);
      const PointMask past = v.past == PastChoice::mutual
                                 ? (pa & pb)
                                 : ((pa | pb) & ~(a | b));
      ++report.pairs_examined;
      for (const FullSpecification& f : atoms_of(past)) {
        if (prob(m, f.event) == Rational(0)) continue;
        ++report.specs_examined;
        for (const FullSpecification& ea : atoms_of(a))
          for (const FullSpecification& eb : atoms_of(b)) {
            if (detail::correlation_is_zero(m, sw, ea.event, eb.event,
                                            f.event))
              continue;
            Violation viol;
            viol.region_a = a;
            viol.region_b = b;
            viol.event_a = ea.event;
            viol.event_b = eb.event;
            viol.past_region = past;
            viol.full_spec = f.event;
            viol.p_joint = cond_prob(m, ea.event & eb.event, f.event);
            viol.p_product = cond_prob(m, ea.event, f.event) *
                             cond_prob(m, eb.event, f.event);
            report.violations.push_back(viol);
            report.holds = false;
            if (early_exit) return report;
          }
      }
    }
  }
  return report;
}

inline bool condition_holds(const StochasticCausalModel& m,
                            ConditionVariant v) {
  return check_condition(m, v, "", true).holds;
}

// Splits a full specification of R along a partition of R into one full
// specification per part, whose intersection is the original event. In this
// point-generated setting the split always exists; a FactorizationFailure
// therefore signals a broken atom, never a legitimate outcome.
inline std::vector<FullSpecification> factor_full_specification(
    const StochasticCausalModel& m, const FullSpecification& f,
    const std::vector<PointMask>& parts) {
  PointMask seen = 0;
  for (const PointMask part : parts) {
    if (part & seen) throw PartitionError("parts overlap");
    seen |= part;
  }
  if (seen != f.region)
    throw PartitionError("parts do not cover the region exactly");
  if (f.event == 0)
    throw std::invalid_argument("empty full-specification event");

  std::vector<FullSpecification> out;
  EventMask meet = m.omega_mask();
  for (const PointMask part : parts) {
    const FullSpecification* found = nullptr;
    for (const FullSpecification& atom : full_specifications(m, part)) {
      if ((f.event & ~atom.event) == 0) {
        found = &atom;
        out.push_back(atom);
        break;
      }
    }
    if (found == nullptr)
      throw FactorizationFailure(
          "full specification not contained in any atom of a part");
    meet &= out.back().event;
  }
  if (meet != f.event)
    throw FactorizationFailure(
        "part atoms do not intersect back to the full specification");
  return out;
}

}  // namespace creg
