#include <catch2/catch_amalgamated.hpp>

#include "creg/sweep.hpp"

using creg::CausalSet;
using creg::Rational;
using creg::SimpsonConfig;
using creg::StochasticCausalModel;
using creg::SweepConfig;
using creg::SweepReport;

namespace {

SweepConfig small_exhaustive() {
  SweepConfig c;
  c.max_points = 3;
  c.outcomes_per_point = 2;
  c.measures = creg::exhaustive_measures(2);
  c.variants = {"so1", "so2"};
  return c;
}

}  // namespace

TEST_CASE("exhaustive equivalence sweep finds no split verdicts") {
  const SweepReport r = creg::equivalence_sweep(small_exhaustive());
  // posets: 1 + 3 + 19; models: one per measure composition per poset
  CHECK(r.posets_examined == 23);
  CHECK(r.models_examined == 717);
  REQUIRE(r.tallies.size() == 2);
  CHECK(r.tallies[0].holds + r.tallies[0].fails == 717);
  CHECK(r.tallies[0].holds == r.tallies[1].holds);
  CHECK(r.tallies[0].fails > 0);  // the stream contains violating models
  REQUIRE(r.comparisons.size() == 1);
  CHECK(r.comparisons[0].is_equivalence);
  CHECK(r.comparisons[0].differing == 0);
  CHECK(r.comparisons[0].examples.empty());
  CHECK(r.equivalence_intact());
}

TEST_CASE("sweep reports are byte-identical across runs and thread counts") {
  SweepConfig c = small_exhaustive();
  c.variants = {"so1", "so2", "finite-so1", "finite-so2", "so2w"};
  const std::string once = creg::equivalence_sweep(c).to_text();
  const std::string again = creg::equivalence_sweep(c).to_text();
  CHECK(once == again);
  c.threads = 2;
  CHECK(creg::equivalence_sweep(c).to_text() == once);
  c.threads = 3;
  CHECK(creg::equivalence_sweep(c).to_text() == once);

  SweepConfig r = small_exhaustive();
  r.max_points = 4;
  r.measures = creg::random_measures(11, 400);
  const std::string rand_once = creg::equivalence_sweep(r).to_text();
  r.threads = 2;
  CHECK(creg::equivalence_sweep(r).to_text() == rand_once);
  r.measures = creg::random_measures(12, 400);
  r.threads = 1;
  CHECK(creg::equivalence_sweep(r).to_text() != rand_once);
}

TEST_CASE("finite variants are compared against their parents") {
  SweepConfig c = small_exhaustive();
  c.variants = {"so1", "so2", "finite-so1", "finite-so2", "so2w"};
  c.example_cap = 2;
  const SweepReport r = creg::equivalence_sweep(c);
  REQUIRE(r.comparisons.size() == 4);
  CHECK(r.comparisons[0].first == "so1");
  CHECK(r.comparisons[0].second == "so2");
  CHECK(r.comparisons[0].differing == 0);
  for (std::size_t i = 1; i < 4; ++i) {
    CHECK_FALSE(r.comparisons[i].is_equivalence);
    CHECK(r.comparisons[i].examples.size() <= 2);
    if (r.comparisons[i].differing > 2)
      CHECK(r.comparisons[i].examples.size() == 2);
  }
  // eligibility filters only ever rescue a failing model, never break a
  // passing one, so each finite variant holds at least as often
  CHECK(r.tallies[2].holds >= r.tallies[0].holds);  // finite-so1 vs so1
  CHECK(r.tallies[3].holds >= r.tallies[1].holds);  // finite-so2 vs so2
  CHECK(r.tallies[4].holds >= r.tallies[1].holds);  // so2w vs so2
  CHECK(r.equivalence_intact());
}

TEST_CASE("random-mode sweep samples the requested number of models") {
  SweepConfig c = small_exhaustive();
  c.max_points = 4;
  c.measures = creg::random_measures(3, 250);
  const SweepReport r = creg::equivalence_sweep(c);
  CHECK(r.models_examined == 250);
  CHECK(r.posets_examined == 219);
  CHECK(r.equivalence_intact());
}

TEST_CASE("sweep honours the configured caps") {
  SweepConfig c = small_exhaustive();
  c.max_points = 9;
  CHECK_THROWS_AS(creg::equivalence_sweep(c), creg::CapExceeded);
  c.max_points = 0;
  CHECK_THROWS_AS(creg::equivalence_sweep(c), std::invalid_argument);
  c.max_points = 3;
  c.threads = 0;
  CHECK_THROWS_AS(creg::equivalence_sweep(c), std::invalid_argument);
}

TEST_CASE("empty variant list sweeps without checking anything") {
  SweepConfig c = small_exhaustive();
  c.variants = {};
  const SweepReport r = creg::equivalence_sweep(c);
  CHECK(r.models_examined == 717);
  CHECK(r.tallies.empty());
  CHECK(r.comparisons.empty());
  CHECK(r.equivalence_intact());
}

TEST_CASE("forced-equal coins fail so1 and so2 together") {
  // wedge site, measure supported on two atoms that copy one fair coin to
  // both unconditioned points
  const CausalSet wedge =
      CausalSet::build({"x", "a", "b"}, {{"x", "a"}, {"x", "b"}});
  const StochasticCausalModel uniform = creg::make_product_model(
      wedge, 2, std::vector<Rational>(8, Rational(1, 8)));
  std::vector<Rational> measure(8, Rational(0));
  measure[(std::size_t)uniform.outcome_index("111")] = Rational(1, 2);
  measure[(std::size_t)uniform.outcome_index("122")] = Rational(1, 2);
  const StochasticCausalModel coins =
      creg::make_product_model(wedge, 2, measure);
  CHECK_FALSE(creg::condition_holds(coins, creg::variant_by_name("so1")));
  CHECK_FALSE(creg::condition_holds(coins, creg::variant_by_name("so2")));
}

TEST_CASE("factorization sweep passes clean and catches injected faults") {
  const SweepConfig c = small_exhaustive();
  const creg::Corollary1Report clean = creg::verify_corollary1_sweep(c);
  CHECK(clean.all_passed());
  CHECK(clean.failures == 0);
  CHECK(clean.models_examined == 717);
  CHECK(clean.specs_factored > 0);
  CHECK(clean.partitions_checked > 0);
  CHECK(clean.incidents.empty());

  const creg::Corollary1Report injected =
      creg::verify_corollary1_sweep(c, true);
  CHECK(injected.fault_injected);
  CHECK(injected.specs_factored == clean.specs_factored);
  // every corrupted specification must be rejected; a fault slipping
  // through would show up here as a failure
  CHECK(injected.all_passed());

  CHECK(clean.to_text() == creg::verify_corollary1_sweep(c).to_text());
  SweepConfig threaded = c;
  threaded.threads = 2;
  CHECK(creg::verify_corollary1_sweep(threaded).to_text() == clean.to_text());
}

TEST_CASE("single-point sites factor vacuously") {
  SweepConfig c = small_exhaustive();
  c.max_points = 1;
  const creg::Corollary1Report r = creg::verify_corollary1_sweep(c);
  CHECK(r.models_examined == 3);
  CHECK(r.all_passed());
  CHECK(r.specs_factored > 0);
}

TEST_CASE("conditioning-induced correlation is found in the default stream") {
  const SimpsonConfig config;
  const creg::SimpsonWitness w = creg::find_simpson(config);
  const StochasticCausalModel& m = w.model;
  CHECK(creg::correlation(m, w.event_a, w.event_b, m.omega_mask()) ==
        Rational(0));
  CHECK(w.conditional != Rational(0));
  CHECK(creg::correlation(m, w.event_a, w.event_b, w.full_spec) ==
        w.conditional);
  // the witness pair is spacelike and conditioned on its mutual past
  CHECK((w.region_b & creg::spacelike_complement_mask(m.site, w.region_a)) ==
        w.region_b);
  CHECK(w.past_region == (creg::past_mask(m.site, w.region_a) &
                          creg::past_mask(m.site, w.region_b)));
  bool spec_is_atom = false;
  for (const auto& f : creg::full_specifications(m, w.past_region))
    if (f.event == w.full_spec) spec_is_atom = true;
  CHECK(spec_is_atom);
  CHECK(creg::prob(m, w.full_spec) > Rational(0));
  CHECK(w.model_index < config.budget);

  // deterministic: the same search lands on the same witness
  const creg::SimpsonWitness w2 = creg::find_simpson(config);
  CHECK(w2.model_index == w.model_index);
  CHECK(w2.event_a == w.event_a);
  CHECK(w2.full_spec == w.full_spec);
}

TEST_CASE("the search is honest about not finding anything") {
  SimpsonConfig zero;
  zero.budget = 0;
  CHECK_THROWS_AS(creg::find_simpson(zero), creg::NotFound);

  SimpsonConfig tiny;
  tiny.budget = 3;  // only the single-point models fit
  CHECK_THROWS_AS(creg::find_simpson(tiny), creg::NotFound);

  // product measures keep spacelike coordinates independent under
  // conditioning, so the restricted stream must come up empty
  SimpsonConfig products;
  products.product_measures_only = true;
  products.budget = 1000000;
  CHECK_THROWS_AS(creg::find_simpson(products), creg::NotFound);

  SimpsonConfig big;
  big.max_points = 9;
  CHECK_THROWS_AS(creg::find_simpson(big), creg::CapExceeded);
}
