#pragma once

// Verification sweeps over the enumerated model families, plus the search
// for conditioning-induced correlation. Work is split by global model
// index, workers share nothing, and partial results are merged in index
// order, so a report's bytes depend only on the configuration and seed,
// never on the thread count. Wall time is kept out of the serialized
// reports for the same reason.

#include <chrono>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "creg/causal_set.hpp"
#include "creg/enumerate.hpp"
#include "creg/errors.hpp"
#include "creg/model_io.hpp"
#include "creg/stochastic.hpp"

namespace creg {

struct SweepConfig {
  int max_points = 3;
  int outcomes_per_point = 2;
  MeasureMode measures = exhaustive_measures(2);
  std::vector<std::string> variants = {"so1", "so2"};
  int threads = 1;
  int point_cap = 4;    // hard cap; the CLI can raise it via environment
  int example_cap = 5;  // serialized models kept per informative comparison
};

struct VariantTally {
  std::string name;
  std::uint64_t holds = 0;
  std::uint64_t fails = 0;
};

struct Disagreement {
  std::uint64_t model_index = 0;
  std::string serialized_model;
};

struct ComparisonLog {
  std::string first, second;
  bool is_equivalence = false;  // so1 vs so2: examples never capped
  std::uint64_t differing = 0;
  std::vector<Disagreement> examples;
};

struct SweepReport {
  int max_points = 0;
  int outcomes_per_point = 0;
  std::string measure_desc;
  std::vector<std::string> variants;
  std::uint64_t posets_examined = 0;
  std::uint64_t models_examined = 0;
  std::vector<VariantTally> tallies;
  std::vector<ComparisonLog> comparisons;
  std::int64_t wall_ms = 0;  // informational only, never serialized

  bool equivalence_intact() const {
    for (const ComparisonLog& c : comparisons)
      if (c.is_equivalence && c.differing != 0) return false;
    return true;
  }

  std::string to_text() const {
    std::ostringstream out;
    out << "sweep report\n";
    out << "config:\n";
    out << "  max points: " << max_points << "\n";
    out << "  outcomes per point: " << outcomes_per_point << "\n";
    out << "  measures: " << measure_desc << "\n";
    out << "  variants:";
    for (const std::string& v : variants) out << " " << v;
    out << "\n";
    out << "totals:\n";
    out << "  posets examined: " << posets_examined << "\n";
    out << "  models examined: " << models_examined << "\n";
    out << "verdicts:\n";
    for (const VariantTally& t : tallies)
      out << "  " << t.name << ": holds " << t.holds << ", fails " << t.fails
          << "\n";
    out << "comparisons:\n";
    for (const ComparisonLog& c : comparisons) {
      out << "  " << c.first << " vs " << c.second << ": " << c.differing
          << " models disagree";
      if (c.differing > c.examples.size())
        out << " (showing first " << c.examples.size() << ")";
      out << "\n";
      for (const Disagreement& d : c.examples) {
        out << "    model " << d.model_index << ":\n";
        std::istringstream lines(d.serialized_model);
        std::string line;
        while (std::getline(lines, line)) out << "      " << line << "\n";
      }
    }
    return out.str();
  }

  std::string to_json() const {
    nlohmann::json doc;
    doc["config"] = {{"max_points", max_points},
                     {"outcomes_per_point", outcomes_per_point},
                     {"measures", measure_desc},
                     {"variants", variants}};
    doc["posets_examined"] = posets_examined;
    doc["models_examined"] = models_examined;
    doc["verdicts"] = nlohmann::json::object();
    for (const VariantTally& t : tallies)
      doc["verdicts"][t.name] = {{"holds", t.holds}, {"fails", t.fails}};
    doc["comparisons"] = nlohmann::json::array();
    for (const ComparisonLog& c : comparisons) {
      nlohmann::json entry = {{"first", c.first},
                              {"second", c.second},
                              {"differing", c.differing}};
      entry["examples"] = nlohmann::json::array();
      for (const Disagreement& d : c.examples)
        entry["examples"].push_back(
            {{"model_index", d.model_index},
             {"model", nlohmann::json::parse(d.serialized_model)}});
      doc["comparisons"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
  }
};

namespace detail {

inline void validate_sweep_config(const SweepConfig& c) {
  if (c.max_points < 1)
    throw std::invalid_argument("sweep needs at least one point");
  if (c.max_points > c.point_cap)
    throw CapExceeded("sweep capped at " + std::to_string(c.point_cap) +
                      " points (max-points " + std::to_string(c.max_points) +
                      " requested)");
  if (c.threads < 1) throw std::invalid_argument("thread count must be >= 1");
  if (c.example_cap < 0)
    throw std::invalid_argument("example cap must be >= 0");
}

inline std::string describe_measures(const MeasureMode& m) {
  std::ostringstream out;
  if (m.kind == MeasureKind::exhaustive)
    out << "exhaustive, denominator " << m.denominator;
  else
    out << "random, seed " << m.seed << ", samples " << m.samples;
  return out.str();
}

// Sample from the random-mode stream: a poset drawn uniformly from the
// n = max_points pool, then a random measure, all from one per-sample
// engine.
inline StochasticCausalModel sampled_model(const std::vector<CausalSet>& pool,
                                           int k, std::uint64_t seed,
                                           std::uint64_t index) {
  std::mt19937_64 rng(splitmix64(seed + index));
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  const CausalSet& site = pool[pick(rng)];
  std::int64_t omega = 1;
  for (int p = 0; p < site.size(); ++p) omega *= k;
  return make_product_model(site, k, random_measure_from(rng, (int)omega));
}

// Runs `process(model, global_index)` over the configured model stream,
// restricted to indices owned by this worker.
inline void walk_stream(
    const SweepConfig& c, const std::vector<CausalSet>& pool, int worker,
    const std::function<void(const StochasticCausalModel&, std::uint64_t)>&
        process) {
  if (c.measures.kind == MeasureKind::exhaustive) {
    std::uint64_t idx = 0;
    for (const CausalSet& site : pool)
      for_each_model(site, c.outcomes_per_point, c.measures,
                     [&](const StochasticCausalModel& m) {
                       if (idx % (std::uint64_t)c.threads ==
                           (std::uint64_t)worker)
                         process(m, idx);
                       ++idx;
                     });
  } else {
    for (std::uint64_t i = (std::uint64_t)worker; i < c.measures.samples;
         i += (std::uint64_t)c.threads)
      process(detail::sampled_model(pool, c.outcomes_per_point,
                                    c.measures.seed, i),
              i);
  }
}

// Exhaustive mode walks every poset with 1..max_points points; random mode
// samples sites with exactly max_points points.
inline std::vector<CausalSet> sweep_poset_pool(const SweepConfig& c) {
  std::vector<CausalSet> pool;
  if (c.measures.kind == MeasureKind::exhaustive) {
    for (int n = 1; n <= c.max_points; ++n)
      for_each_poset(n, false,
                     [&](const CausalSet& s) { pool.push_back(s); });
  } else {
    pool = enumerate_posets(c.max_points, false);
  }
  return pool;
}

template <typename T>
inline void sort_by_index(std::vector<T>& v) {
  std::sort(v.begin(), v.end(), [](const T& a, const T& b) {
    return a.model_index < b.model_index;
  });
}

}  // namespace detail

// Evaluates every configured condition on every model of the stream and
// reports where verdicts disagree: so1-vs-so2 disagreements are the headline
// (they would contradict the equivalence this sweep exists to check, so
// every one is kept), and each finite variant is compared against its parent
// descriptively with a capped example list.
inline SweepReport equivalence_sweep(const SweepConfig& config) {
  detail::validate_sweep_config(config);
  const auto started = std::chrono::steady_clock::now();

  std::vector<ConditionVariant> parsed;
  for (const std::string& name : config.variants)
    parsed.push_back(variant_by_name(name));

  const auto has = [&](const std::string& name) {
    for (std::size_t i = 0; i < config.variants.size(); ++i)
      if (config.variants[i] == name) return (int)i;
    return -1;
  };
  struct PairSpec {
    int first, second;
    bool is_equivalence;
  };
  std::vector<PairSpec> pair_specs;
  const auto add_pair = [&](const char* a, const char* b, bool eq) {
    const int i = has(a), j = has(b);
    if (i >= 0 && j >= 0) pair_specs.push_back(PairSpec{i, j, eq});
  };
  add_pair("so1", "so2", true);
  add_pair("so1", "finite-so1", false);
  add_pair("so2", "finite-so2", false);
  add_pair("so2", "so2w", false);

  const std::vector<CausalSet> pool = detail::sweep_poset_pool(config);

  struct Local {
    std::uint64_t models = 0;
    std::vector<std::uint64_t> holds, fails;
    std::vector<std::uint64_t> differing;
    std::vector<std::vector<Disagreement>> examples;
  };
  std::vector<Local> locals((std::size_t)config.threads);
  const auto run_worker = [&](int w) {
    Local& acc = locals[(std::size_t)w];
    acc.holds.assign(parsed.size(), 0);
    acc.fails.assign(parsed.size(), 0);
    acc.differing.assign(pair_specs.size(), 0);
    acc.examples.resize(pair_specs.size());
    std::vector<char> verdict(parsed.size());
    detail::walk_stream(
        config, pool, w,
        [&](const StochasticCausalModel& m, std::uint64_t idx) {
          ++acc.models;
          for (std::size_t v = 0; v < parsed.size(); ++v) {
            verdict[v] = condition_holds(m, parsed[v]) ? 1 : 0;
            ++(verdict[v] ? acc.holds[v] : acc.fails[v]);
          }
          for (std::size_t p = 0; p < pair_specs.size(); ++p) {
            if (verdict[(std::size_t)pair_specs[p].first] ==
                verdict[(std::size_t)pair_specs[p].second])
              continue;
            ++acc.differing[p];
            if (pair_specs[p].is_equivalence ||
                acc.examples[p].size() < (std::size_t)config.example_cap)
              acc.examples[p].push_back(
                  Disagreement{idx, serialize_model(m)});
          }
        });
  };

  if (config.threads == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> crew;
    for (int w = 1; w < config.threads; ++w)
      crew.emplace_back(run_worker, w);
    run_worker(0);
    for (std::thread& t : crew) t.join();
  }

  SweepReport report;
  report.max_points = config.max_points;
  report.outcomes_per_point = config.outcomes_per_point;
  report.measure_desc = detail::describe_measures(config.measures);
  report.variants = config.variants;
  report.posets_examined = pool.size();
  for (std::size_t v = 0; v < parsed.size(); ++v)
    report.tallies.push_back(VariantTally{config.variants[v], 0, 0});
  for (const PairSpec& p : pair_specs)
    report.comparisons.push_back(
        ComparisonLog{config.variants[(std::size_t)p.first],
                      config.variants[(std::size_t)p.second],
                      p.is_equivalence,
                      0,
                      {}});
  for (const Local& acc : locals) {
    report.models_examined += acc.models;
    for (std::size_t v = 0; v < parsed.size(); ++v) {
      report.tallies[v].holds += acc.holds[v];
      report.tallies[v].fails += acc.fails[v];
    }
    for (std::size_t p = 0; p < pair_specs.size(); ++p) {
      report.comparisons[p].differing += acc.differing[p];
      report.comparisons[p].examples.insert(
          report.comparisons[p].examples.end(), acc.examples[p].begin(),
          acc.examples[p].end());
    }
  }
  for (std::size_t p = 0; p < pair_specs.size(); ++p) {
    detail::sort_by_index(report.comparisons[p].examples);
    if (!pair_specs[p].is_equivalence &&
        report.comparisons[p].examples.size() >
            (std::size_t)config.example_cap)
      report.comparisons[p].examples.resize((std::size_t)config.example_cap);
  }
  report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return report;
}

struct FactorizationIncident {
  std::uint64_t model_index = 0;
  PointMask region = 0;
  PointMask part = 0;  // first part of the partition that was being applied
  EventMask spec_event = 0;
  std::string serialized_model;
};

struct Corollary1Report {
  int max_points = 0;
  int outcomes_per_point = 0;
  std::string measure_desc;
  bool fault_injected = false;
  std::uint64_t posets_examined = 0;
  std::uint64_t models_examined = 0;
  std::uint64_t partitions_checked = 0;
  std::uint64_t specs_factored = 0;
  std::uint64_t failures = 0;
  std::vector<FactorizationIncident> incidents;  // capped
  std::int64_t wall_ms = 0;  // informational only, never serialized

  bool all_passed() const { return failures == 0; }

  std::string to_text() const {
    std::ostringstream out;
    out << "factorization sweep" << (fault_injected ? " (fault injection)" : "")
        << "\n";
    out << "config:\n";
    out << "  max points: " << max_points << "\n";
    out << "  outcomes per point: " << outcomes_per_point << "\n";
    out << "  measures: " << measure_desc << "\n";
    out << "totals:\n";
    out << "  posets examined: " << posets_examined << "\n";
    out << "  models examined: " << models_examined << "\n";
    out << "  partitions checked: " << partitions_checked << "\n";
    out << "  specifications factored: " << specs_factored << "\n";
    out << "  failures: " << failures << "\n";
    if (failures > incidents.size())
      out << "  (showing first " << incidents.size() << ")\n";
    for (const FactorizationIncident& i : incidents) {
      out << "  failure in model " << i.model_index << ", region mask "
          << i.region << ", first part mask " << i.part << ", event mask "
          << i.spec_event << ":\n";
      std::istringstream lines(i.serialized_model);
      std::string line;
      while (std::getline(lines, line)) out << "    " << line << "\n";
    }
    return out.str();
  }
};

// Factors every full specification of every region across every two-part
// split of that region (single-point regions only admit the whole-region
// split). With inject_fault set, each specification is deliberately
// corrupted first and the sweep instead verifies that the factorization
// rejects it; a fault that slips through counts as a failure.
inline Corollary1Report verify_corollary1_sweep(const SweepConfig& config,
                                                bool inject_fault = false) {
  detail::validate_sweep_config(config);
  const auto started = std::chrono::steady_clock::now();
  const std::vector<CausalSet> pool = detail::sweep_poset_pool(config);

  struct Local {
    std::uint64_t models = 0, partitions = 0, specs = 0, failures = 0;
    std::vector<FactorizationIncident> incidents;
  };
  std::vector<Local> locals((std::size_t)config.threads);
  const auto run_worker = [&](int w) {
    Local& acc = locals[(std::size_t)w];
    detail::walk_stream(
        config, pool, w,
        [&](const StochasticCausalModel& m, std::uint64_t idx) {
          ++acc.models;
          const PointMask all = m.site.all_mask();
          for (PointMask region = 1; region <= all && region != 0; ++region) {
            std::vector<std::vector<PointMask>> splits;
            const PointMask low = region & (~region + 1);
            if (region == low) {
              splits.push_back({region});
            } else {
              // every two-part split, represented once: the part holding
              // the region's lowest point comes first
              const PointMask rest = region & ~low;
              for (PointMask sub = rest;; sub = (sub - 1) & rest) {
                if (sub == rest) {
                  sub = (sub - 1) & rest;  // skip the empty second part
                  if (sub == rest) break;
                }
                splits.push_back({low | sub, region & ~(low | sub)});
                if (sub == 0) break;
              }
            }
            const std::vector<FullSpecification> specs =
                full_specifications(m, region);
            for (const std::vector<PointMask>& parts : splits) {
              ++acc.partitions;
              for (const FullSpecification& f : specs) {
                ++acc.specs;
                FullSpecification probe = f;
                if (inject_fault) {
                  if ((probe.event & (probe.event - 1)) != 0)
                    probe.event &= probe.event - 1;  // drop an outcome
                  else
                    probe.event |= (~probe.event & m.omega_mask()) &
                                   (~(~probe.event & m.omega_mask()) + 1);
                }
                bool rejected = false;
                try {
                  factor_full_specification(m, probe, parts);
                } catch (const FactorizationFailure&) {
                  rejected = true;
                }
                if (rejected != inject_fault) {
                  ++acc.failures;
                  if (acc.incidents.size() <
                      (std::size_t)config.example_cap)
                    acc.incidents.push_back(FactorizationIncident{
                        idx, region, parts[0], probe.event,
                        serialize_model(m)});
                }
              }
            }
          }
        });
  };

  if (config.threads == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> crew;
    for (int w = 1; w < config.threads; ++w)
      crew.emplace_back(run_worker, w);
    run_worker(0);
    for (std::thread& t : crew) t.join();
  }

  Corollary1Report report;
  report.max_points = config.max_points;
  report.outcomes_per_point = config.outcomes_per_point;
  report.measure_desc = detail::describe_measures(config.measures);
  report.fault_injected = inject_fault;
  report.posets_examined = pool.size();
  for (const Local& acc : locals) {
    report.models_examined += acc.models;
    report.partitions_checked += acc.partitions;
    report.specs_factored += acc.specs;
    report.failures += acc.failures;
    report.incidents.insert(report.incidents.end(), acc.incidents.begin(),
                            acc.incidents.end());
  }
  detail::sort_by_index(report.incidents);
  if (report.incidents.size() > (std::size_t)config.example_cap)
    report.incidents.resize((std::size_t)config.example_cap);
  report.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
  return report;
}

struct SimpsonConfig {
  int max_points = 3;
  int outcomes_per_point = 2;
  int denominator = 4;
  std::uint64_t budget = 10000;  // models examined before giving up
  bool product_measures_only = false;
  int point_cap = 4;
};

struct SimpsonWitness {
  StochasticCausalModel model;
  std::uint64_t model_index = 0;
  PointMask region_a = 0, region_b = 0;
  EventMask event_a = 0, event_b = 0;
  PointMask past_region = 0;
  EventMask full_spec = 0;
  Rational conditional;  // correlation given full_spec; zero unconditionally
};

namespace detail {

// First (A, B, F) in scan order with zero unconditional correlation and a
// nonzero correlation conditioned on a full specification of the mutual
// past. Events are atoms of their regions' algebras.
inline bool simpson_witness_in(const StochasticCausalModel& m,
                               SimpsonWitness& w) {
  const detail::ScaledWeights sw = detail::ScaledWeights::build(m.measure);
  const PointMask all = m.site.all_mask();
  for (PointMask a = 1; a <= all && a != 0; ++a) {
    const PointMask allowed = spacelike_complement_mask(m.site, a);
    if (allowed == 0) continue;
    const PointMask pa = past_mask(m.site, a);
    for (PointMask b = allowed;; b = (b - 1) & allowed) {
      if (b == 0) break;
      const PointMask past = pa & past_mask(m.site, b);
      const std::vector<FullSpecification> specs =
          full_specifications(m, past);
      for (const FullSpecification& ea : full_specifications(m, a))
        for (const FullSpecification& eb : full_specifications(m, b)) {
          if (!detail::correlation_is_zero(m, sw, ea.event, eb.event,
                                           m.omega_mask()))
            continue;
          for (const FullSpecification& f : specs) {
            if (prob(m, f.event) == Rational(0)) continue;
            if (detail::correlation_is_zero(m, sw, ea.event, eb.event,
                                            f.event))
              continue;
            w.model = m;
            w.region_a = a;
            w.region_b = b;
            w.event_a = ea.event;
            w.event_b = eb.event;
            w.past_region = past;
            w.full_spec = f.event;
            w.conditional = correlation(m, ea.event, eb.event, f.event);
            return true;
          }
        }
    }
  }
  return false;
}

// All product measures with per-point marginals on a denominator-D grid.
inline void for_each_product_measure(
    const CausalSet& site, int k, int denominator,
    const std::function<void(const StochasticCausalModel&)>& fn) {
  const int n = site.size();
  std::vector<std::vector<int>> marginals;
  for_each_composition(denominator, k, [&](const std::vector<int>& c) {
    marginals.push_back(c);
  });
  std::int64_t omega = 1, den = 1;
  for (int p = 0; p < n; ++p) {
    omega *= k;
    den *= denominator;
    if (omega > 64) throw CapExceeded("sample space exceeds 64 atoms");
  }
  std::vector<std::size_t> choice((std::size_t)n, 0);
  for (;;) {
    std::vector<Rational> measure;
    measure.reserve((std::size_t)omega);
    for (std::int64_t t = 0; t < omega; ++t) {
      std::int64_t num = 1, rest = t;
      for (int p = n - 1; p >= 0; --p) {
        num *= marginals[choice[(std::size_t)p]][(std::size_t)(rest % k)];
        rest /= k;
      }
      measure.emplace_back(num, den);
    }
    fn(make_product_model(site, k, std::move(measure)));
    int p = n - 1;
    while (p >= 0 && ++choice[(std::size_t)p] == marginals.size()) {
      choice[(std::size_t)p] = 0;
      --p;
    }
    if (p < 0) break;
  }
}

}  // namespace detail

// Scans the exhaustive model stream for conditioning-induced correlation:
// a pair of spacelike regions with atom events uncorrelated outright but
// correlated given some full specification of their mutual past. The
// product-only mode restricts the stream to product measures, where no such
// instance exists (conditioning on coordinate atoms preserves independence);
// it is there to confirm the search reports honestly instead of
// manufacturing hits.
inline SimpsonWitness find_simpson(const SimpsonConfig& config) {
  if (config.max_points < 1)
    throw std::invalid_argument("search needs at least one point");
  if (config.max_points > config.point_cap)
    throw CapExceeded("search capped at " + std::to_string(config.point_cap) +
                      " points");
  if (config.denominator < 1 || config.denominator > 4)
    throw CapExceeded("search denominator must be between 1 and 4");

  SimpsonWitness w;
  std::uint64_t examined = 0;
  bool found = false;
  const auto inspect = [&](const StochasticCausalModel& m) {
    if (found || examined >= config.budget) return;
    ++examined;
    if (detail::simpson_witness_in(m, w)) {
      w.model_index = examined - 1;
      found = true;
    }
  };
  for (int n = 1; n <= config.max_points && !found; ++n)
    for_each_poset(n, false, [&](const CausalSet& site) {
      if (found || examined >= config.budget) return;
      if (config.product_measures_only)
        detail::for_each_product_measure(site, config.outcomes_per_point,
                                         config.denominator, inspect);
      else
        for_each_model(site, config.outcomes_per_point,
                       exhaustive_measures(config.denominator), inspect);
    });
  if (!found)
    throw NotFound("no conditioning-induced correlation within a budget of " +
                   std::to_string(config.budget) + " models (" +
                   std::to_string(examined) + " examined)");
  return w;
}

}  // namespace creg
