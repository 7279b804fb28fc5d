#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "creg/enumerate.hpp"

using creg::CausalSet;
using creg::PointMask;
using creg::Rational;
using creg::StochasticCausalModel;

namespace {

// Independent count oracle: walk every irreflexive relation bitmap on n
// points and keep the transitive antisymmetric ones.
std::vector<std::uint64_t> brute_force_orders(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  std::vector<std::uint64_t> found;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << slots.size());
       ++pick) {
    bool rel[6][6] = {};
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (pick & (std::uint64_t{1} << s))
        rel[slots[s].first][slots[s].second] = true;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (rel[i][j] && rel[j][i]) ok = false;
        for (int k = 0; k < n && ok; ++k)
          if (rel[i][j] && rel[j][k] && !rel[i][k]) ok = false;
      }
    if (!ok) continue;
    std::uint64_t code = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel[i][j]) code |= std::uint64_t{1} << (i * n + j);
    found.push_back(code);
  }
  return found;
}

std::uint64_t strict_code(const CausalSet& s) {
  const int n = s.size();
  std::uint64_t code = 0;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (p != q && s.leq(p, q)) code |= std::uint64_t{1} << (p * n + q);
  return code;
}

std::uint64_t permuted_code(std::uint64_t code, int n,
                            const std::vector<int>& perm) {
  std::uint64_t out = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (code & (std::uint64_t{1} << (i * n + j)))
        out |= std::uint64_t{1}
               << (perm[(std::size_t)i] * n + perm[(std::size_t)j]);
  return out;
}

}  // namespace

TEST_CASE("seed scrambler reference values") {
  CHECK(creg::splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(creg::splitmix64(1) == 0x910a2dec89025cc1ULL);
  CHECK(creg::splitmix64(12345) == 0x22118258a9d111a0ULL);
}

TEST_CASE("labeled poset counts") {
  CHECK(creg::enumerate_posets(1, false).size() == 1);
  CHECK(creg::enumerate_posets(2, false).size() == 3);
  CHECK(creg::enumerate_posets(3, false).size() == 19);
  CHECK(creg::enumerate_posets(4, false).size() == 219);
  CHECK(creg::enumerate_posets(5, false).size() == 4231);
}

TEST_CASE("labeled enumeration matches the brute-force relation filter") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::uint64_t> brute = brute_force_orders(n);
    std::vector<std::uint64_t> fast;
    for (const CausalSet& s : creg::enumerate_posets(n, false))
      fast.push_back(strict_code(s));
    std::sort(brute.begin(), brute.end());
    std::sort(fast.begin(), fast.end());
    CHECK(brute == fast);
    CHECK(std::adjacent_find(fast.begin(), fast.end()) == fast.end());
  }
}

TEST_CASE("isomorphism-reduced poset counts") {
  CHECK(creg::enumerate_posets(1, true).size() == 1);
  CHECK(creg::enumerate_posets(2, true).size() == 2);
  CHECK(creg::enumerate_posets(3, true).size() == 5);
  CHECK(creg::enumerate_posets(4, true).size() == 16);
  CHECK(creg::enumerate_posets(5, true).size() == 63);
}

TEST_CASE("iso representatives are orbit minima of the brute list") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<int> perm((std::size_t)n);
    for (int i = 0; i < n; ++i) perm[(std::size_t)i] = i;
    std::set<std::uint64_t> orbit_minima;
    for (const std::uint64_t code : brute_force_orders(n)) {
      std::uint64_t best = code;
      std::vector<int> p = perm;
      while (std::next_permutation(p.begin(), p.end()))
        best = std::min(best, permuted_code(code, n, p));
      orbit_minima.insert(best);
    }
    std::set<std::uint64_t> emitted;
    for (const CausalSet& s : creg::enumerate_posets(n, true))
      emitted.insert(strict_code(s));
    CHECK(emitted == orbit_minima);
  }
}

TEST_CASE("enumeration caps") {
  CHECK_THROWS_AS(creg::enumerate_posets(0, false), std::invalid_argument);
  CHECK_THROWS_AS(creg::enumerate_posets(7, false), creg::CapExceeded);
  CHECK_THROWS_AS(creg::enumerate_posets(6, true), creg::CapExceeded);
}

TEST_CASE("spacelike complement definition holds on every small poset") {
  // p is in the complement of R exactly when it relates to no point of R
  for (int n = 1; n <= 5; ++n) {
    for (const CausalSet& s : creg::enumerate_posets(n, n >= 5)) {
      for (PointMask r = 0; r <= s.all_mask(); ++r) {
        const PointMask got = creg::spacelike_complement_mask(s, r);
        PointMask expect = 0;
        for (int p = 0; p < n; ++p) {
          bool clear = true;
          for (int q = 0; q < n && clear; ++q)
            if ((r >> q) & 1)
              if (s.leq(p, q) || s.leq(q, p)) clear = false;
          if (clear) expect |= PointMask{1} << p;
        }
        CHECK(got == expect);
      }
    }
  }
}

TEST_CASE("product model structure") {
  const CausalSet pair = CausalSet::build({"p0", "p1"}, {});
  StochasticCausalModel m = creg::make_product_model(
      pair, 2,
      {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  CHECK(m.outcomes == std::vector<std::string>{"11", "12", "21", "22"});
  REQUIRE(m.local_partition.size() == 2);
  CHECK(m.local_partition[0] ==
        std::vector<creg::EventMask>{0b0011, 0b1100});
  CHECK(m.local_partition[1] ==
        std::vector<creg::EventMask>{0b0101, 0b1010});
  CHECK(creg::validate_model(m).empty());

  CHECK_THROWS_AS(creg::make_product_model(pair, 1, {}),
                  std::invalid_argument);
  const CausalSet seven = CausalSet::build(
      {"a", "b", "c", "d", "e", "f", "g"}, {});
  CHECK_THROWS_AS(
      creg::make_product_model(seven, 2, std::vector<Rational>(128)),
      creg::CapExceeded);
}

TEST_CASE("exhaustive measure streams") {
  const CausalSet one = CausalSet::build({"p0"}, {});
  const auto three =
      creg::enumerate_models(one, 2, creg::exhaustive_measures(2));
  REQUIRE(three.size() == 3);
  CHECK(three[0].measure == std::vector<Rational>{Rational(0), Rational(1)});
  CHECK(three[1].measure ==
        std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
  CHECK(three[2].measure == std::vector<Rational>{Rational(1), Rational(0)});

  const CausalSet pair = CausalSet::build({"p0", "p1"}, {});
  const auto masses =
      creg::enumerate_models(pair, 2, creg::exhaustive_measures(1));
  REQUIRE(masses.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    int ones = 0;
    for (const Rational& w : masses[i].measure)
      if (w == Rational(1)) ++ones;
    CHECK(ones == 1);
    CHECK(masses[i].measure[3 - i] == Rational(1));
    CHECK(creg::validate_model(masses[i]).empty());
  }

  // composition count: D=2 over 4 atoms
  CHECK(creg::enumerate_models(pair, 2, creg::exhaustive_measures(2)).size() ==
        10);
  CHECK_THROWS_AS(creg::enumerate_models(pair, 2, creg::exhaustive_measures(5)),
                  creg::CapExceeded);
  CHECK_THROWS_AS(creg::enumerate_models(pair, 5, creg::exhaustive_measures(1)),
                  creg::CapExceeded);
}

TEST_CASE("random measure streams are reproducible") {
  const CausalSet pair = CausalSet::build({"p0", "p1"}, {});
  const auto a =
      creg::enumerate_models(pair, 2, creg::random_measures(42, 50));
  const auto b =
      creg::enumerate_models(pair, 2, creg::random_measures(42, 50));
  const auto c =
      creg::enumerate_models(pair, 2, creg::random_measures(43, 50));
  REQUIRE(a.size() == 50);
  REQUIRE(b.size() == 50);
  bool all_equal = true;
  bool any_differ_across_seeds = false;
  for (std::size_t i = 0; i < 50; ++i) {
    if (a[i].measure != b[i].measure) all_equal = false;
    if (a[i].measure != c[i].measure) any_differ_across_seeds = true;
    CHECK(creg::validate_model(a[i]).empty());
  }
  CHECK(all_equal);
  CHECK(any_differ_across_seeds);

  // sample index seeds independently of how many samples are drawn
  const auto head =
      creg::enumerate_models(pair, 2, creg::random_measures(42, 3));
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(head[i].measure == a[i].measure);
}
