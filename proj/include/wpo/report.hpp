#ifndef WPO_REPORT_HPP
#define WPO_REPORT_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wpo/core.hpp"
#include "wpo/dilators.hpp"
#include "wpo/orders.hpp"

namespace wpo {

using Json = nlohmann::json;

inline Json fin_poset_to_json(const FinPoset& p) {
  Json pairs = Json::array();
  for (const auto& [i, j] : p.strict_pairs()) pairs.push_back({i, j});
  return Json{{"size", p.size()}, {"pairs", pairs}};
}

inline FinPoset fin_poset_from_json(const Json& j) {
  std::vector<std::pair<Code, Code>> pairs;
  for (const auto& pr : j.at("pairs"))
    pairs.emplace_back(pr.at(0).get<Code>(), pr.at(1).get<Code>());
  return finposet_new(j.at("size").get<std::size_t>(), pairs);
}

inline Json law_witness_to_json(const LawWitness& w) {
  Json posets = Json::array();
  for (const auto& p : w.posets) posets.push_back(fin_poset_to_json(p));
  Json maps = Json::array();
  for (const auto& m : w.maps) maps.push_back(m);
  return Json{{"posets", posets},
              {"maps", maps},
              {"elements", w.elements},
              {"detail", w.detail}};
}

inline LawWitness law_witness_from_json(const Json& j) {
  LawWitness w;
  for (const auto& p : j.at("posets")) w.posets.push_back(fin_poset_from_json(p));
  for (const auto& m : j.at("maps"))
    w.maps.push_back(m.get<std::vector<Code>>());
  w.elements = j.at("elements").get<std::vector<Code>>();
  w.detail = j.at("detail").get<std::string>();
  return w;
}

inline Json law_verdict_to_json(const LawVerdict& v) {
  Json j{{"law", law_name(v.law)},
         {"status", v.pass ? "pass" : "fail"},
         {"instances", v.instances}};
  if (v.witness) j["witness"] = law_witness_to_json(*v.witness);
  return j;
}

/// Accepts both the standalone verdict form ("law") and the run-report
/// check form ("name"), so report entries replay directly.
inline LawVerdict law_verdict_from_json(const Json& j) {
  LawVerdict v;
  const std::string key = j.contains("law") ? "law" : "name";
  const auto law = law_from_name(j.at(key).get<std::string>());
  if (!law) throw OrderError("unknown law name in verdict");
  v.law = *law;
  v.pass = j.at("status").get<std::string>() == "pass";
  v.instances = j.value("instances", std::uint64_t{0});
  if (j.contains("witness")) v.witness = law_witness_from_json(j["witness"]);
  return v;
}

// ---------------------------------------------------------------------------
// Run reports
// ---------------------------------------------------------------------------

/// One named check inside a CLI run: a status plus an optional witness.
struct CheckResult {
  std::string name;
  bool pass = true;
  Json witness;  // null when absent
};

struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  Json budgets = Json::object();
  std::vector<CheckResult> checks;
  std::optional<std::uint64_t> elapsed_ms;  // only with --timing

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
  }
};

/// Deterministic serialization: checks sorted by name, keys sorted by the
/// JSON library, timing omitted unless requested.
inline Json run_report_to_json(const RunReport& r) {
  Json checks = Json::array();
  std::vector<CheckResult> sorted = r.checks;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     return a.name < b.name;
                   });
  for (const auto& c : sorted) {
    Json entry{{"name", c.name}, {"status", c.pass ? "pass" : "fail"}};
    if (!c.witness.is_null()) entry["witness"] = c.witness;
    checks.push_back(entry);
  }
  Json j{{"command", r.command},
         {"seed", r.seed},
         {"budgets", r.budgets},
         {"checks", checks}};
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j;
}

}  // namespace wpo

#endif  // WPO_REPORT_HPP
