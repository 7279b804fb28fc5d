#pragma once

// Command implementations behind the causalregions binary. Each command
// writes to a caller-supplied stream and returns the process exit code, so
// the tests can drive them without spawning processes. Input problems are
// reported by exception; the binary's main() maps those to exit code 2.

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "creg/causal_set.hpp"
#include "creg/errors.hpp"
#include "creg/minkowski.hpp"
#include "creg/model_io.hpp"
#include "creg/rational.hpp"
#include "creg/region_expr.hpp"
#include "creg/stochastic.hpp"
#include "creg/sweep.hpp"

namespace creg {

// Four equiprobable outcomes over the two-branch site; the past point sees
// the diagonal split, the unconditioned points see independent-looking
// events A and B. Conditioning on either block of the x-partition turns
// their zero correlation into 1/4.
inline StochasticCausalModel simpson_example_model() {
  StochasticCausalModel m;
  m.site = CausalSet::build({"x", "a", "b"}, {{"x", "a"}, {"x", "b"}});
  m.outcomes = {"1", "2", "3", "4"};
  m.measure.assign(4, Rational(1, 4));
  m.local_partition = {
      {outcome_mask(m, {"1", "4"}), outcome_mask(m, {"2", "3"})},
      {outcome_mask(m, {"1", "2"}), outcome_mask(m, {"3", "4"})},
      {outcome_mask(m, {"1", "3"}), outcome_mask(m, {"2", "4"})}};
  return m;
}

inline std::vector<NamedEvent> simpson_example_events(
    const StochasticCausalModel& m) {
  return {NamedEvent{"A", outcome_mask(m, {"1", "2"})},
          NamedEvent{"B", outcome_mask(m, {"1", "3"})},
          NamedEvent{"F", outcome_mask(m, {"1", "4"})}};
}

inline std::string point_set_text(const CausalSet& s, PointMask mask) {
  std::string out = "{";
  bool first = true;
  for (int p = 0; p < s.size(); ++p)
    if (mask & (PointMask{1} << p)) {
      if (!first) out += ", ";
      out += s.label(p);
      first = false;
    }
  return out + "}";
}

inline std::string outcome_set_text(const StochasticCausalModel& m,
                                    EventMask e) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < m.omega_size(); ++i)
    if (e & (EventMask{1} << i)) {
      if (!first) out += ", ";
      out += m.outcomes[(std::size_t)i];
      first = false;
    }
  return out + "}";
}

inline nlohmann::json outcome_list_json(const StochasticCausalModel& m,
                                        EventMask e) {
  nlohmann::json out = nlohmann::json::array();
  for (int i = 0; i < m.omega_size(); ++i)
    if (e & (EventMask{1} << i)) out.push_back(m.outcomes[(std::size_t)i]);
  return out;
}

inline nlohmann::json point_list_json(const CausalSet& s, PointMask mask) {
  nlohmann::json out = nlohmann::json::array();
  for (int p = 0; p < s.size(); ++p)
    if (mask & (PointMask{1} << p)) out.push_back(s.label(p));
  return out;
}

// Walks the light-cone construction that defeats the closure-based
// finiteness test: the causal past of the double complement escapes it, so
// the region counts as finite no matter how far it stretches along u.
inline int cmd_demo_counterexample(const Rational& u_star, std::ostream& out) {
  if (!(Rational(0) < u_star))
    throw std::invalid_argument("u* must be positive, got " +
                                u_star.to_string());
  const MinkRegion o = MinkRegion::from_boxes(
      {make_box(Bound::closed_at(Rational(0)), Bound::closed_at(u_star),
                Bound::minus_infinity(), Bound::closed_at(Rational(0)))});
  const MinkRegion complement = spacelike_complement(o);
  const MinkRegion closure = spacelike_complement(complement);
  const MinkRegion closure_past = causal_past(closure);
  const MinkRegion escaped = region_difference(closure_past, closure);

  out << "O           = " << to_expression(o) << "\n";
  out << "O'          = " << to_expression(complement) << "\n";
  out << "(O')'       = " << to_expression(closure) << "\n";
  out << "J-((O')')   = " << to_expression(closure_past) << "\n";
  out << "J-((O')') \\ (O')' = " << to_expression(escaped) << "\n";
  out << (escaped.empty()
              ? "the closure contains its own causal past\n"
              : "the closure does not contain its own causal past\n");
  const bool infinite = is_causally_infinite_rsp(o);
  out << "verdict: O is causally "
      << (infinite ? "INFINITE" : "FINITE") << " under the RSP definition\n";
  return infinite ? 1 : 0;
}

inline int cmd_demo_simpson(bool search, bool json, std::ostream& out) {
  const StochasticCausalModel m = simpson_example_model();
  const std::vector<NamedEvent> events = simpson_example_events(m);
  const EventMask a = events[0].event, b = events[1].event,
                  f = events[2].event;
  const Rational unconditional = correlation(m, a, b, m.omega_mask());
  const Rational conditional = correlation(m, a, b, f);

  nlohmann::json doc;
  if (json) {
    doc["model"] = nlohmann::json::parse(serialize_model(m, events));
    doc["unconditional_correlation"] = unconditional.to_string();
    doc["conditional_on_F"] = conditional.to_string();
  } else {
    out << "built-in model:\n";
    out << "  points: x, a, b with x < a and x < b\n";
    out << "  outcomes: 1, 2, 3, 4, each of weight 1/4\n";
    for (int p = 0; p < m.site.size(); ++p) {
      out << "  partition at " << m.site.label(p) << ":";
      for (const EventMask block : m.local_partition[(std::size_t)p])
        out << " " << outcome_set_text(m, block);
      out << "\n";
    }
    out << "events:\n";
    out << "  A = {1, 2}   decidable at a\n";
    out << "  B = {1, 3}   decidable at b\n";
    out << "  F = {1, 4}   full specification of the mutual past {x}\n";
    out << "correlation(A, B) = " << unconditional.to_string() << "\n";
    out << "correlation(A, B | F) = " << conditional.to_string() << "\n";
    out << "conditioning on the past turned independent events into "
           "correlated ones\n";
  }

  if (search) {
    const SimpsonWitness w = find_simpson(SimpsonConfig{});
    if (json) {
      nlohmann::json found;
      found["model_index"] = w.model_index;
      found["model"] = nlohmann::json::parse(serialize_model(w.model));
      found["region_a"] = point_list_json(w.model.site, w.region_a);
      found["region_b"] = point_list_json(w.model.site, w.region_b);
      found["event_a"] = outcome_list_json(w.model, w.event_a);
      found["event_b"] = outcome_list_json(w.model, w.event_b);
      found["past_region"] = point_list_json(w.model.site, w.past_region);
      found["full_spec"] = outcome_list_json(w.model, w.full_spec);
      found["conditional_correlation"] = w.conditional.to_string();
      doc["search"] = std::move(found);
    } else {
      out << "\nsearch over the exhaustive stream found a witness at model "
          << w.model_index << ":\n";
      out << "  sites " << point_set_text(w.model.site, w.region_a) << " and "
          << point_set_text(w.model.site, w.region_b) << ", mutual past "
          << point_set_text(w.model.site, w.past_region) << "\n";
      out << "  A = " << outcome_set_text(w.model, w.event_a)
          << ", B = " << outcome_set_text(w.model, w.event_b)
          << ", F = " << outcome_set_text(w.model, w.full_spec) << "\n";
      out << "  correlation(A, B) = 0, correlation(A, B | F) = "
          << w.conditional.to_string() << "\n";
      std::istringstream lines(serialize_model(w.model));
      std::string line;
      while (std::getline(lines, line)) out << "  " << line << "\n";
    }
  }
  if (json) out << doc.dump(2) << "\n";
  return 0;
}

inline int cmd_check(const std::string& model_path,
                     const std::string& condition, bool json,
                     std::ostream& out) {
  const ModelFile file = load_model_file(model_path);
  const ConditionVariant v = variant_by_name(condition);
  const CheckReport report = check_condition(file.model, v, condition);
  const StochasticCausalModel& m = file.model;

  if (json) {
    nlohmann::json doc;
    doc["condition"] = report.condition;
    doc["holds"] = report.holds;
    doc["pairs_examined"] = report.pairs_examined;
    doc["specs_examined"] = report.specs_examined;
    doc["violations"] = nlohmann::json::array();
    for (const Violation& viol : report.violations) {
      nlohmann::json entry;
      entry["region_a"] = point_list_json(m.site, viol.region_a);
      entry["region_b"] = point_list_json(m.site, viol.region_b);
      entry["event_a"] = outcome_list_json(m, viol.event_a);
      entry["event_b"] = outcome_list_json(m, viol.event_b);
      entry["past_region"] = point_list_json(m.site, viol.past_region);
      entry["full_spec"] = outcome_list_json(m, viol.full_spec);
      entry["p_joint"] = viol.p_joint.to_string();
      entry["p_product"] = viol.p_product.to_string();
      doc["violations"].push_back(std::move(entry));
    }
    out << doc.dump(2) << "\n";
  } else {
    out << "condition: " << report.condition << "\n";
    out << "model: " << m.site.size() << " points, " << m.omega_size()
        << " outcomes\n";
    out << "pairs examined: " << report.pairs_examined
        << ", specifications examined: " << report.specs_examined << "\n";
    if (report.holds) {
      out << "HOLDS\n";
    } else {
      out << "VIOLATED (" << report.violations.size() << " witnesses)\n";
      std::size_t shown = 0;
      for (const Violation& viol : report.violations) {
        if (++shown > 10) {
          out << "  ... " << (report.violations.size() - 10) << " more\n";
          break;
        }
        out << "  regions " << point_set_text(m.site, viol.region_a) << " / "
            << point_set_text(m.site, viol.region_b) << ", past "
            << point_set_text(m.site, viol.past_region) << "\n";
        out << "    A = " << outcome_set_text(m, viol.event_a)
            << ", B = " << outcome_set_text(m, viol.event_b)
            << ", F = " << outcome_set_text(m, viol.full_spec) << "\n";
        out << "    P(A and B | F) = " << viol.p_joint.to_string()
            << " but P(A|F) P(B|F) = " << viol.p_product.to_string() << "\n";
      }
    }
  }
  return report.holds ? 0 : 1;
}

struct SweepCliOptions {
  int max_points = 3;
  int outcomes = 2;
  int denominator = 2;
  bool random = false;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::vector<std::string> variants = {"so1", "so2"};
  int threads = 1;
  int point_cap = 4;  // raised via CAUSALREGIONS_MAX_POINTS
  std::string out_path;
};

inline int cmd_sweep(const SweepCliOptions& options, std::ostream& out) {
  SweepConfig config;
  config.max_points = options.max_points;
  config.outcomes_per_point = options.outcomes;
  config.measures = options.random
                        ? random_measures(options.seed, options.samples)
                        : exhaustive_measures(options.denominator);
  config.variants = options.variants;
  config.threads = options.threads;
  config.point_cap = options.point_cap;
  const SweepReport report = equivalence_sweep(config);
  const std::string text = report.to_text();
  if (options.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(options.out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write '" + options.out_path +
                                        "'");
    f << text;
    out << "report written to " << options.out_path << "\n";
  }
  return report.equivalence_intact() ? 0 : 1;
}

inline int cmd_region_calc(const std::string& op, const std::string& expr,
                           std::ostream& out) {
  const MinkRegion region = parse_region_expression(expr);
  if (op == "past") {
    out << to_expression(causal_past(region)) << "\n";
  } else if (op == "future") {
    out << to_expression(causal_future(region)) << "\n";
  } else if (op == "complement") {
    out << to_expression(spacelike_complement(region)) << "\n";
  } else if (op == "closure") {
    out << to_expression(causal_closure(region)) << "\n";
  } else if (op == "rsp-finite") {
    out << (is_causally_infinite_rsp(region) ? "false" : "true") << "\n";
  } else {
    throw std::invalid_argument(
        "unknown op '" + op +
        "' (expected past, future, complement, closure, or rsp-finite)");
  }
  return 0;
}

}  // namespace creg
