#pragma once

// Plain-text (JSON) model files. Two input spellings are accepted for the
// sample space:
//
//   "outcomes": ["1", "2", "3", "4"]       flat atom list; a "partitions"
//                                          key must then give each point's
//                                          blocks explicitly
//
//   "outcomes": {"a": ["0","1"], ...}      one alphabet per point; the atom
//                                          set is the cartesian product,
//                                          atoms are named by joining the
//                                          per-point outcomes with ".", and
//                                          each point is partitioned by its
//                                          own coordinate
//
// The measure maps atom names to exact rationals ("num/den" strings); atoms
// left out get weight zero. Serialization always emits the flat spelling,
// canonically ordered, so equal models produce identical bytes.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "creg/errors.hpp"
#include "creg/rational.hpp"
#include "creg/stochastic.hpp"

namespace creg {

struct NamedEvent {
  std::string name;
  EventMask event = 0;
};

struct ModelFile {
  StochasticCausalModel model;
  std::vector<NamedEvent> events;

  EventMask event_by_name(std::string_view name) const {
    for (const NamedEvent& e : events)
      if (e.name == name) return e.event;
    throw std::invalid_argument("no event named '" + std::string(name) +
                                "' in the model file");
  }
};

namespace detail {

inline const nlohmann::json& expect(const nlohmann::json& doc,
                                    const char* key, const char* kind) {
  const auto it = doc.find(key);
  if (it == doc.end())
    throw std::invalid_argument(std::string("model file: missing '") + key +
                                "' (" + kind + ")");
  return *it;
}

inline std::vector<std::string> string_list(const nlohmann::json& j,
                                            const std::string& where) {
  if (!j.is_array())
    throw std::invalid_argument("model file: " + where +
                                " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string())
      throw std::invalid_argument("model file: " + where +
                                  " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline Rational rational_field(const nlohmann::json& j,
                               const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string())
    throw std::invalid_argument("model file: " + where +
                                " must be a \"num/den\" string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw std::invalid_argument("model file: " + where + ": " + e.what());
  }
}

}  // namespace detail

inline ModelFile parse_model_file(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!doc.is_object())
    throw std::invalid_argument("model file: top level must be an object");
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (key != "points" && key != "relations" && key != "outcomes" &&
        key != "measure" && key != "partitions" && key != "events")
      throw std::invalid_argument("model file: unknown key '" + key + "'");
  }

  const std::vector<std::string> points =
      detail::string_list(detail::expect(doc, "points", "point labels"),
                          "'points'");

  const nlohmann::json& rel = detail::expect(doc, "relations", "causal pairs");
  if (!rel.is_array())
    throw std::invalid_argument("model file: 'relations' must be an array");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& e : rel) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() ||
        !e[1].is_string())
      throw std::invalid_argument(
          "model file: each relation must be a [from, to] pair of labels");
    pairs.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }

  ModelFile out;
  out.model.site = CausalSet::build(points, pairs);

  const nlohmann::json& oc = detail::expect(doc, "outcomes", "sample space");
  if (oc.is_array()) {
    out.model.outcomes = detail::string_list(oc, "'outcomes'");
    const nlohmann::json& parts = detail::expect(
        doc, "partitions", "required with a flat outcome list");
    if (!parts.is_object())
      throw std::invalid_argument(
          "model file: 'partitions' must map points to block lists");
    out.model.local_partition.resize(points.size());
    std::size_t given = 0;
    for (const auto& [point, blocks] : parts.items()) {
      const int p = out.model.site.index(point);
      if (!blocks.is_array())
        throw std::invalid_argument("model file: partition of '" + point +
                                    "' must be a list of blocks");
      std::vector<EventMask> masks;
      for (const auto& block : blocks)
        masks.push_back(outcome_mask(
            out.model, detail::string_list(block, "block of '" + point + "'")));
      out.model.local_partition[(std::size_t)p] = std::move(masks);
      ++given;
    }
    if (given != points.size())
      throw std::invalid_argument(
          "model file: 'partitions' must cover every point exactly once");
  } else if (oc.is_object()) {
    if (doc.find("partitions") != doc.end())
      throw std::invalid_argument(
          "model file: 'partitions' is implied by per-point outcomes and "
          "cannot be given as well");
    std::vector<std::vector<std::string>> alphabet(points.size());
    std::size_t given = 0;
    for (const auto& [point, labels] : oc.items()) {
      const int p = out.model.site.index(point);
      alphabet[(std::size_t)p] =
          detail::string_list(labels, "outcomes of '" + point + "'");
      if (alphabet[(std::size_t)p].empty())
        throw std::invalid_argument("model file: point '" + point +
                                    "' has no outcomes");
      ++given;
    }
    if (given != points.size())
      throw std::invalid_argument(
          "model file: per-point outcomes must cover every point exactly "
          "once");
    std::int64_t total = 1;
    for (const auto& a : alphabet) {
      total *= (std::int64_t)a.size();
      if (total > 64)
        throw CapExceeded("model file: sample space exceeds 64 atoms");
    }
    for (std::int64_t t = 0; t < total; ++t) {
      std::string name;
      std::int64_t rest = t;
      std::int64_t radix = total;
      for (std::size_t p = 0; p < alphabet.size(); ++p) {
        radix /= (std::int64_t)alphabet[p].size();
        if (p != 0) name += '.';
        name += alphabet[p][(std::size_t)(rest / radix)];
        rest %= radix;
      }
      out.model.outcomes.push_back(std::move(name));
    }
    for (std::size_t p = 0; p < alphabet.size(); ++p) {
      std::vector<EventMask> blocks(alphabet[p].size(), 0);
      for (std::int64_t t = 0; t < total; ++t) {
        std::int64_t rest = t;
        std::int64_t radix = total;
        std::size_t digit = 0;
        for (std::size_t q = 0; q <= p; ++q) {
          radix /= (std::int64_t)alphabet[q].size();
          digit = (std::size_t)(rest / radix);
          rest %= radix;
        }
        blocks[digit] |= EventMask{1} << t;
      }
      out.model.local_partition.push_back(std::move(blocks));
    }
  } else {
    throw std::invalid_argument(
        "model file: 'outcomes' must be an array of atoms or a map from "
        "points to their outcome lists");
  }

  const nlohmann::json& meas = detail::expect(doc, "measure", "atom weights");
  if (!meas.is_object())
    throw std::invalid_argument(
        "model file: 'measure' must map atom names to rationals");
  out.model.measure.assign(out.model.outcomes.size(), Rational(0));
  for (const auto& [atom, weight] : meas.items()) {
    const int i = out.model.outcome_index(atom);
    out.model.measure[(std::size_t)i] =
        detail::rational_field(weight, "weight of '" + atom + "'");
  }

  if (const auto it = doc.find("events"); it != doc.end()) {
    if (!it->is_object())
      throw std::invalid_argument(
          "model file: 'events' must map names to atom lists");
    for (const auto& [name, atoms] : it->items())
      out.events.push_back(NamedEvent{
          name, outcome_mask(out.model, detail::string_list(
                                 atoms, "event '" + name + "'"))});
  }

  require_valid(out.model);
  return out;
}

inline ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_file(buf.str());
}

// Canonical flat-form serialization; nlohmann orders object keys, so the
// bytes depend only on the model itself.
inline std::string serialize_model(const StochasticCausalModel& m,
                                   const std::vector<NamedEvent>& events = {}) {
  nlohmann::json doc;
  doc["points"] = nlohmann::json::array();
  for (int p = 0; p < m.site.size(); ++p)
    doc["points"].push_back(m.site.label(p));
  doc["relations"] = nlohmann::json::array();
  for (const auto& [from, to] : m.site.relation_pairs())
    doc["relations"].push_back({from, to});
  doc["outcomes"] = m.outcomes;
  nlohmann::json meas = nlohmann::json::object();
  for (int i = 0; i < m.omega_size(); ++i)
    meas[m.outcomes[(std::size_t)i]] = m.measure[(std::size_t)i].to_string();
  doc["measure"] = std::move(meas);
  nlohmann::json parts = nlohmann::json::object();
  for (int p = 0; p < m.site.size(); ++p) {
    nlohmann::json blocks = nlohmann::json::array();
    for (const EventMask block : m.local_partition[(std::size_t)p]) {
      nlohmann::json labels = nlohmann::json::array();
      for (int i = 0; i < m.omega_size(); ++i)
        if (block & (EventMask{1} << i))
          labels.push_back(m.outcomes[(std::size_t)i]);
      blocks.push_back(std::move(labels));
    }
    parts[m.site.label(p)] = std::move(blocks);
  }
  doc["partitions"] = std::move(parts);
  if (!events.empty()) {
    nlohmann::json ev = nlohmann::json::object();
    for (const NamedEvent& e : events) {
      nlohmann::json labels = nlohmann::json::array();
      for (int i = 0; i < m.omega_size(); ++i)
        if (e.event & (EventMask{1} << i))
          labels.push_back(m.outcomes[(std::size_t)i]);
      ev[e.name] = std::move(labels);
    }
    doc["events"] = std::move(ev);
  }
  return doc.dump(2) + "\n";
}

}  // namespace creg
