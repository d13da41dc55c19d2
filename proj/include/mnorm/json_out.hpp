#pragma once

// JSON views of the library's result types. Enclosure endpoints are printed
// with enough decimal digits that re-parsing at the recorded bit count
// reproduces the interval exactly.

#include <string>
#include <utility>

#include <json.hpp>

#include "mnorm/arith.hpp"
#include "mnorm/collisions.hpp"
#include "mnorm/fock.hpp"
#include "mnorm/ordering.hpp"
#include "mnorm/verify.hpp"

namespace mnorm {

using nlohmann::json;

inline json enclosure_json(const RealEnclosure& e) {
  json j{{"lo", e.lo_string()},
         {"hi", e.hi_string()},
         {"prec", e.precision_bits()},
         {"bits", e.work_bits()}};
  if (e.is_exact()) j["exact"] = e.exact_value().get_str();
  return j;
}

inline json pair_json(long long q, long long p) { return json::array({q, p}); }

inline json scan_json(const ScanResult& r) {
  json pts = json::array(), dist = json::array();
  for (const auto& [q, p] : r.points) pts.push_back(pair_json(q, p));
  for (const auto& d : r.distances) dist.push_back(d.get_str());
  json j{{"points", pts},
         {"distances", dist},
         {"classification", to_string(r.classification)},
         {"mode", r.mode == ScanMode::CoprimeOnly ? "CoprimeOnly" : "AllSector"}};
  if (r.classification == ScanClass::StrictlyAntimodal)
    j["antimodal_index"] = r.antimodal_index;
  if (!r.ties.empty()) j["ties"] = r.ties;
  return j;
}

inline json monotone_json(const MonotoneReport& r) {
  json v = json::array();
  for (const auto& [c, cls] : r.violations)
    v.push_back({{"line_offset", c}, {"classification", to_string(cls)}});
  return json{{"slope", r.slope.get_str()},
              {"q_bound", r.q_bound},
              {"expected", to_string(r.expected)},
              {"lines_scanned", r.lines_scanned},
              {"nontrivial_lines", r.nontrivial_lines},
              {"points_seen", r.points_seen},
              {"violations", v},
              {"pass", r.pass}};
}

inline json suite_json(const SuiteResult& r) {
  return json{{"suite", r.name},       {"pass", r.pass},
              {"checks", r.checks},    {"failures", r.failures},
              {"notes", r.notes},      {"undecided_events", r.undecided_events}};
}

inline json corner_json(const CornerSlopes& c) {
  json j{{"at", pair_json(c.at.q, c.at.p)}, {"ell", enclosure_json(c.ell)}};
  j["L"] = c.left_deriv ? enclosure_json(*c.left_deriv) : json(nullptr);
  j["R"] = c.right_deriv ? enclosure_json(*c.right_deriv) : json(nullptr);
  j["mu_minus"] = c.mu_minus ? enclosure_json(*c.mu_minus) : json(nullptr);
  j["mu_plus"] = c.mu_plus ? enclosure_json(*c.mu_plus) : json(nullptr);
  return j;
}

inline json census_json(const CensusReport& r) {
  json collisions = json::array();
  for (const auto& [label, pairs] : r.collisions) {
    json group = json::array();
    for (const auto& v : pairs) group.push_back(pair_json(v.q, v.p));
    collisions.push_back({{"label", label.get_str()}, {"pairs", group}});
  }
  json petrov = json::array();
  for (const auto& [n, bound] : r.petrov_curve)
    petrov.push_back({{"n", n.get_str()}, {"log_pow_2_3", enclosure_json(bound)}});
  return json{{"max_q", r.max_q},
              {"max_multiplicity", r.max_multiplicity},
              {"pair_count", r.pair_count},
              {"streamed", r.streamed},
              {"collisions", collisions},
              {"petrov_curve", petrov}};
}

}  // namespace mnorm
