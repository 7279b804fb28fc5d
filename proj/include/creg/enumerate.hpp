#pragma once

// Exhaustive generation of small causal sets and of the point-localized
// stochastic models living on them. Streams are deterministic: a fixed
// request always produces the same models in the same order, which is what
// lets sweeps be partitioned across workers and still merge canonically.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "creg/causal_set.hpp"
#include "creg/errors.hpp"
#include "creg/rational.hpp"
#include "creg/stochastic.hpp"

namespace creg {

// Standard splitmix64 scrambler; used to derive independent per-sample
// engine seeds from (user seed, sample index).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace detail {

// Relation bitmap of the strict order after relabeling point i to perm[i].
// Needs n*n <= 64 bits.
inline std::uint64_t encode_relation(const std::vector<PointMask>& down,
                                     const std::vector<int>& perm) {
  const int n = (int)down.size();
  std::uint64_t code = 0;
  for (int j = 0; j < n; ++j)
    for (int p = 0; p < n; ++p)
      if (down[(std::size_t)j] & (PointMask{1} << p))
        code |= std::uint64_t{1}
                << (perm[(std::size_t)p] * n + perm[(std::size_t)j]);
  return code;
}

inline bool is_canonical_labeling(const std::vector<PointMask>& down) {
  const int n = (int)down.size();
  std::vector<int> perm((std::size_t)n);
  for (int i = 0; i < n; ++i) perm[(std::size_t)i] = i;
  const std::uint64_t own = encode_relation(down, perm);
  while (std::next_permutation(perm.begin(), perm.end()))
    if (encode_relation(down, perm) < own) return false;
  return true;
}

inline std::vector<std::string> numbered_labels(int n) {
  std::vector<std::string> labels;
  labels.reserve((std::size_t)n);
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return labels;
}

}  // namespace detail

// Every partial order on n labeled points exactly once, or one
// lexicographically-least representative per isomorphism class. The
// recursion assigns each point its strict down-set; a family of down-sets
// is a partial order exactly when no two points contain each other and
// membership implies containment, both checked pairwise as soon as the
// later point is placed.
inline void for_each_poset(int n, bool up_to_iso,
                           const std::function<void(const CausalSet&)>& emit) {
  if (n < 1) throw std::invalid_argument("need at least one point");
  if (n > (up_to_iso ? 5 : 6))
    throw CapExceeded("poset enumeration capped at 6 points (5 up to iso)");
  const std::vector<std::string> labels = detail::numbered_labels(n);
  std::vector<PointMask> down((std::size_t)n, 0);
  const PointMask all =
      n == 64 ? ~PointMask{0} : (PointMask{1} << n) - 1;

  const std::function<void(int)> place = [&](int m) {
    if (m == n) {
      if (up_to_iso && !detail::is_canonical_labeling(down)) return;
      std::vector<PointMask> reflexive = down;
      for (int i = 0; i < n; ++i)
        reflexive[(std::size_t)i] |= PointMask{1} << i;
      emit(CausalSet::from_down_masks(labels, reflexive));
      return;
    }
    const PointMask allowed = all & ~(PointMask{1} << m);
    PointMask d = 0;
    for (;;) {
      bool ok = true;
      for (int j = 0; j < m && ok; ++j) {
        const bool j_below_m = (d >> j) & 1;
        const bool m_below_j = (down[(std::size_t)j] >> m) & 1;
        if (j_below_m && m_below_j) ok = false;
        if (j_below_m && (down[(std::size_t)j] & ~d)) ok = false;
        if (m_below_j && (d & ~down[(std::size_t)j])) ok = false;
      }
      if (ok) {
        down[(std::size_t)m] = d;
        place(m + 1);
      }
      d = (d - allowed) & allowed;  // next subset, ascending
      if (d == 0) break;
    }
    down[(std::size_t)m] = 0;
  };
  place(0);
}

inline std::vector<CausalSet> enumerate_posets(int n, bool up_to_iso) {
  std::vector<CausalSet> out;
  for_each_poset(n, up_to_iso, [&](const CausalSet& s) { out.push_back(s); });
  return out;
}

enum class MeasureKind { exhaustive, random };

struct MeasureMode {
  MeasureKind kind = MeasureKind::exhaustive;
  int denominator = 2;        // exhaustive: weights are multiples of 1/D
  std::uint64_t seed = 0;     // random
  std::uint64_t samples = 0;  // random
};

inline MeasureMode exhaustive_measures(int denominator) {
  MeasureMode m;
  m.kind = MeasureKind::exhaustive;
  m.denominator = denominator;
  return m;
}

inline MeasureMode random_measures(std::uint64_t seed,
                                   std::uint64_t samples) {
  MeasureMode m;
  m.kind = MeasureKind::random;
  m.seed = seed;
  m.samples = samples;
  return m;
}

// All ways to write `total` as an ordered sum of `parts` nonnegative
// integers, first part ascending.
inline void for_each_composition(
    int total, int parts, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> c((std::size_t)parts, 0);
  const std::function<void(int, int)> fill = [&](int idx, int left) {
    if (idx == parts - 1) {
      c[(std::size_t)idx] = left;
      fn(c);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[(std::size_t)idx] = v;
      fill(idx + 1, left - v);
    }
  };
  if (parts >= 1) fill(0, total);
}

// Small integer weights, redrawn if all zero, normalized exactly.
inline std::vector<Rational> random_measure_from(std::mt19937_64& rng,
                                                 int omega) {
  std::uniform_int_distribution<int> weight(0, 8);
  std::vector<int> w((std::size_t)omega, 0);
  std::int64_t total = 0;
  while (total == 0) {
    total = 0;
    for (int& x : w) {
      x = weight(rng);
      total += x;
    }
  }
  std::vector<Rational> out;
  out.reserve((std::size_t)omega);
  for (const int x : w) out.emplace_back(x, total);
  return out;
}

// Deterministic random measure: sample `index` of the stream owned by
// `seed`. Every sample gets its own engine, so a stream prefix does not
// depend on how many samples are drawn after it.
inline std::vector<Rational> random_measure(int omega, std::uint64_t seed,
                                            std::uint64_t index) {
  std::mt19937_64 rng(splitmix64(seed + index));
  return random_measure_from(rng, omega);
}

// The point-localized concretization: Omega is the product of one
// k-outcome alphabet per point, an atom is named by its digit string
// (point 0 first), and the partition at point p groups atoms by their
// p-th digit.
inline StochasticCausalModel make_product_model(const CausalSet& site, int k,
                                                std::vector<Rational> measure) {
  const int n = site.size();
  if (n < 1) throw std::invalid_argument("site has no points");
  if (k < 2 || k > 9)
    throw std::invalid_argument("outcomes per point must be between 2 and 9");
  std::int64_t omega = 1;
  for (int p = 0; p < n; ++p) {
    omega *= k;
    if (omega > 64) throw CapExceeded("sample space exceeds 64 atoms");
  }
  StochasticCausalModel m;
  m.site = site;
  for (std::int64_t t = 0; t < omega; ++t) {
    std::string label((std::size_t)n, '0');
    std::int64_t rest = t;
    for (int p = n - 1; p >= 0; --p) {
      label[(std::size_t)p] = (char)('1' + rest % k);
      rest /= k;
    }
    m.outcomes.push_back(std::move(label));
  }
  if ((std::int64_t)measure.size() != omega)
    throw std::invalid_argument("measure size does not match the atom count");
  m.measure = std::move(measure);
  for (int p = 0; p < n; ++p) {
    std::vector<EventMask> blocks((std::size_t)k, 0);
    for (std::int64_t t = 0; t < omega; ++t) {
      const int digit = (int)(m.outcomes[(std::size_t)t][(std::size_t)p] - '1');
      blocks[(std::size_t)digit] |= EventMask{1} << t;
    }
    m.local_partition.push_back(std::move(blocks));
  }
  return m;
}

// Every product model over `site` with the requested measure family.
// Exhaustive mode walks all measures with weights in (1/D)N summing to 1;
// random mode draws `samples` measures from the seeded stream.
inline void for_each_model(
    const CausalSet& site, int k, const MeasureMode& mode,
    const std::function<void(const StochasticCausalModel&)>& fn) {
  const int n = site.size();
  if (n < 1) throw std::invalid_argument("site has no points");
  if (k < 2 || k > 9)
    throw std::invalid_argument("outcomes per point must be between 2 and 9");
  std::int64_t omega = 1;
  for (int p = 0; p < n; ++p) {
    omega *= k;
    if (omega > 64) throw CapExceeded("sample space exceeds 64 atoms");
  }
  if (mode.kind == MeasureKind::exhaustive) {
    if (mode.denominator < 1)
      throw std::invalid_argument("denominator must be positive");
    if (mode.denominator > 4)
      throw CapExceeded("exhaustive measure denominator capped at 4");
    if (omega > 16)
      throw CapExceeded("exhaustive measures capped at 16 atoms");
    for_each_composition(mode.denominator, (int)omega,
                         [&](const std::vector<int>& c) {
                           std::vector<Rational> measure;
                           measure.reserve(c.size());
                           for (const int v : c)
                             measure.emplace_back(v, mode.denominator);
                           fn(make_product_model(site, k, std::move(measure)));
                         });
  } else {
    for (std::uint64_t i = 0; i < mode.samples; ++i)
      fn(make_product_model(site, k,
                            random_measure((int)omega, mode.seed, i)));
  }
}

inline std::vector<StochasticCausalModel> enumerate_models(
    const CausalSet& site, int k, const MeasureMode& mode) {
  std::vector<StochasticCausalModel> out;
  for_each_model(site, k, mode,
                 [&](const StochasticCausalModel& m) { out.push_back(m); });
  return out;
}

}  // namespace creg
