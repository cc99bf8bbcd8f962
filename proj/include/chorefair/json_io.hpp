#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "chorefair/allocation.hpp"
#include "chorefair/cost_function.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/fairness.hpp"
#include "chorefair/function_class.hpp"
#include "chorefair/instance.hpp"
#include "chorefair/oracle.hpp"
#include "chorefair/solve_report.hpp"

namespace chorefair {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError("expected an object", path);
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'", path);
  return *it;
}

inline std::int64_t as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError("expected an integer", path);
  return j.get<std::int64_t>();
}

inline std::vector<Cost> as_int_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError("expected an array", path);
  std::vector<Cost> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_int(j[k], path + "/" + std::to_string(k)));
  return out;
}

inline ItemSet as_item_set(const Json& j, const std::string& path) {
  ItemSet s;
  const auto items = as_int_array(j, path);
  for (std::size_t k = 0; k < items.size(); ++k) {
    const Cost e = items[k];
    if (e < 0 || e >= ItemSet::kCapacity) {
      throw ParseError("item index out of range", path + "/" + std::to_string(k));
    }
    if (s.contains(static_cast<int>(e))) throw ParseError("duplicate item", path + "/" + std::to_string(k));
    s.insert(static_cast<int>(e));
  }
  return s;
}

inline Json item_set_json(ItemSet s) { return Json(s.to_vector()); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Cost functions

inline Json to_json(const CostFunction& fn) {
  return std::visit(
      [&](const auto& d) -> Json {
        using T = std::decay_t<decltype(d)>;
        Json j;
        if constexpr (std::is_same_v<T, descriptor::Additive>) {
          j["type"] = "additive";
          j["costs"] = d.costs;
        } else if constexpr (std::is_same_v<T, descriptor::CappedAdditive>) {
          j["type"] = "capped_additive";
          j["costs"] = d.costs;
          j["cap"] = d.cap;
        } else if constexpr (std::is_same_v<T, descriptor::Cardinality>) {
          j["type"] = "cardinality";
          j["cap"] = d.cap;
        } else if constexpr (std::is_same_v<T, descriptor::PartitionMatroid>) {
          j["type"] = "partition_matroid";
          Json groups = Json::array();
          for (ItemSet g : d.groups) groups.push_back(detail::item_set_json(g));
          j["groups"] = groups;
          j["capacities"] = d.capacities;
        } else if constexpr (std::is_same_v<T, descriptor::Threshold>) {
          j["type"] = "threshold";
          j["k"] = d.k;
        } else {
          j["type"] = "table";
          j["m"] = fn.item_count();
          j["values"] = d.values;
        }
        return j;
      },
      fn.descriptor());
}

/// Parses one descriptor for an instance with m items.
inline CostFunction cost_function_from_json(const Json& j, int m,
                                            TablePolicy policy = TablePolicy::require_binary,
                                            const std::string& path = "") {
  const Json& type_field = detail::field(j, "type", path);
  if (!type_field.is_string()) throw ParseError("'type' must be a string", path + "/type");
  const std::string type = type_field.get<std::string>();
  auto check_len = [&](const std::vector<Cost>& costs, const std::string& where) {
    if (static_cast<int>(costs.size()) != m) {
      throw ParseError("expected " + std::to_string(m) + " costs, got " + std::to_string(costs.size()), where);
    }
  };
  try {
    if (type == "additive") {
      auto costs = detail::as_int_array(detail::field(j, "costs", path), path + "/costs");
      check_len(costs, path + "/costs");
      return CostFunction::additive(std::move(costs));
    }
    if (type == "capped_additive") {
      auto costs = detail::as_int_array(detail::field(j, "costs", path), path + "/costs");
      check_len(costs, path + "/costs");
      return CostFunction::capped_additive(std::move(costs), detail::as_int(detail::field(j, "cap", path), path + "/cap"));
    }
    if (type == "cardinality") {
      return CostFunction::cardinality(m, detail::as_int(detail::field(j, "cap", path), path + "/cap"));
    }
    if (type == "partition_matroid") {
      const Json& groups = detail::field(j, "groups", path);
      if (!groups.is_array()) throw ParseError("expected an array", path + "/groups");
      std::vector<ItemSet> sets;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        sets.push_back(detail::as_item_set(groups[g], path + "/groups/" + std::to_string(g)));
      }
      auto caps = detail::as_int_array(detail::field(j, "capacities", path), path + "/capacities");
      return CostFunction::partition_matroid(m, std::move(sets), std::move(caps));
    }
    if (type == "threshold") {
      return CostFunction::threshold(m, detail::as_int(detail::field(j, "k", path), path + "/k"));
    }
    if (type == "table") {
      const auto table_m = detail::as_int(detail::field(j, "m", path), path + "/m");
      if (table_m != m) {
        throw ParseError("table declares m=" + std::to_string(table_m) + ", instance has m=" + std::to_string(m),
                         path + "/m");
      }
      auto values = detail::as_int_array(detail::field(j, "values", path), path + "/values");
      if (m > kMaxTableItems || values.size() != (std::size_t{1} << m)) {
        throw ParseError("table needs 2^m values with m <= " + std::to_string(kMaxTableItems), path + "/values");
      }
      return CostFunction::table(std::move(values), policy);
    }
  } catch (const InvalidInput& err) {
    throw ParseError(err.what(), path);
  }
  throw ParseError("unknown descriptor type '" + type + "'", path + "/type");
}

// ---------------------------------------------------------------------------
// Instances

inline Json to_json(const Instance& inst) {
  Json j;
  j["n"] = inst.agent_count();
  j["m"] = inst.item_count();
  j["declared_class"] = std::string(to_string(inst.declared_class()));
  Json agents = Json::array();
  for (const auto& fn : inst.agents()) agents.push_back(to_json(fn));
  j["agents"] = agents;
  const auto& md = inst.metadata();
  Json meta = Json::object();
  if (!md.name.empty()) meta["name"] = md.name;
  if (md.seed) meta["seed"] = *md.seed;
  if (!md.family.empty()) meta["family"] = md.family;
  if (!md.agent_labels.empty()) meta["agent_labels"] = md.agent_labels;
  if (!md.item_labels.empty()) meta["item_labels"] = md.item_labels;
  j["metadata"] = meta;
  return j;
}

inline Instance instance_from_json(const Json& j) {
  const auto n = detail::as_int(detail::field(j, "n", ""), "/n");
  const auto m = detail::as_int(detail::field(j, "m", ""), "/m");
  if (n < 1) throw ParseError("n must be at least 1", "/n");
  if (m < 0 || m > kMaxItems) throw ParseError("m must lie in [0, " + std::to_string(kMaxItems) + "]", "/m");
  const Json& cls = detail::field(j, "declared_class", "");
  if (!cls.is_string()) throw ParseError("expected a string", "/declared_class");
  FunctionClass declared{};
  try {
    declared = parse_function_class(cls.get<std::string>());
  } catch (const InvalidInput& err) {
    throw ParseError(err.what(), "/declared_class");
  }
  const Json& agents = detail::field(j, "agents", "");
  if (!agents.is_array()) throw ParseError("expected an array", "/agents");
  if (static_cast<std::int64_t>(agents.size()) != n) {
    throw ParseError("expected " + std::to_string(n) + " agents, got " + std::to_string(agents.size()), "/agents");
  }
  const TablePolicy policy =
      declared == FunctionClass::general ? TablePolicy::allow_non_binary : TablePolicy::require_binary;
  std::vector<CostFunction> fns;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    fns.push_back(cost_function_from_json(agents[i], static_cast<int>(m), policy, "/agents/" + std::to_string(i)));
  }
  InstanceMetadata md;
  if (auto it = j.find("metadata"); it != j.end()) {
    const Json& meta = *it;
    if (!meta.is_object()) throw ParseError("expected an object", "/metadata");
    try {
      if (meta.contains("name")) md.name = meta["name"].get<std::string>();
      if (meta.contains("seed")) md.seed = meta["seed"].get<std::uint64_t>();
      if (meta.contains("family")) md.family = meta["family"].get<std::string>();
      if (meta.contains("agent_labels")) md.agent_labels = meta["agent_labels"].get<std::vector<std::string>>();
      if (meta.contains("item_labels")) md.item_labels = meta["item_labels"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& err) {
      throw ParseError(err.what(), "/metadata");
    }
  }
  try {
    return Instance(static_cast<int>(m), std::move(fns), declared, std::move(md));
  } catch (const InvalidInput& err) {
    throw ParseError(err.what(), "/agents");
  }
}

inline Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw ParseError(err.what(), "byte " + std::to_string(err.byte));
  }
}

inline Instance parse_instance(std::string_view text) { return instance_from_json(parse_json_text(text)); }

/// Deterministic text form: identical instances give identical bytes.
inline std::string serialize_instance(const Instance& inst) { return to_json(inst).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Allocations

inline Json to_json(const Allocation& x) {
  Json bundles = Json::array();
  for (ItemSet b : x.bundles) bundles.push_back(detail::item_set_json(b));
  Json j;
  j["bundles"] = bundles;
  j["unallocated"] = detail::item_set_json(x.unallocated);
  return j;
}

inline Allocation allocation_from_json(const Json& j, const std::string& path = "") {
  const Json& bundles = detail::field(j, "bundles", path);
  if (!bundles.is_array()) throw ParseError("expected an array", path + "/bundles");
  Allocation x;
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    x.bundles.push_back(detail::as_item_set(bundles[i], path + "/bundles/" + std::to_string(i)));
  }
  if (auto it = j.find("unallocated"); it != j.end()) x.unallocated = detail::as_item_set(*it, path + "/unallocated");
  return x;
}

inline Allocation parse_allocation(std::string_view text) { return allocation_from_json(parse_json_text(text)); }

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const Violation& v) {
  Json j;
  j["i"] = v.i;
  j["j"] = v.j;
  j["item"] = v.item ? Json(*v.item) : Json(nullptr);
  return j;
}

inline Json to_json(const FairnessReport& r) {
  Json j;
  j["ef"] = r.ef;
  j["efx"] = r.efx;
  j["alpha"] = r.alpha.to_string();
  j["alpha_ef"] = r.alpha_ef;
  j["alpha_efx"] = r.alpha_efx;
  j["po"] = r.po ? Json(*r.po) : Json(nullptr);
  if (r.dominating) j["dominating_allocation"] = to_json(*r.dominating);
  j["social_cost"] = r.social_cost;
  j["complete"] = r.complete;
  Json vs = Json::array();
  for (const auto& lv : r.violations) {
    Json v = to_json(lv.violation);
    v["criterion"] = lv.criterion;
    vs.push_back(v);
  }
  j["violations"] = vs;
  return j;
}

inline Json to_json(const FunctionClassReport& r) {
  Json j;
  j["binary_marginal"] = r.binary_marginal;
  j["monotone"] = r.monotone;
  j["additive"] = r.additive;
  j["cancelable"] = r.cancelable;
  j["submodular"] = r.submodular;
  j["exhaustive"] = r.exhaustive;
  if (!r.exhaustive) j["trials"] = r.trials;
  j["strongest_class"] = std::string(to_string(r.strongest()));
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json x;
    x["property"] = std::string(to_string(w.property));
    x["S"] = detail::item_set_json(w.s);
    x["T"] = detail::item_set_json(w.t);
    x["item"] = w.item >= 0 ? Json(w.item) : Json(nullptr);
    ws.push_back(x);
  }
  j["witnesses"] = ws;
  return j;
}

inline Json to_json(const TraceEvent& ev) {
  Json j;
  j["event"] = ev.event;
  if (!ev.phase.empty()) j["phase"] = ev.phase;
  j["round"] = ev.round;
  if (ev.agent) j["agent"] = *ev.agent;
  if (ev.other) j["other"] = *ev.other;
  if (ev.item) j["item"] = *ev.item;
  if (!ev.agents.empty()) j["agents"] = ev.agents;
  if (!ev.items.empty()) j["items"] = ev.items;
  return j;
}

inline Json to_json(const SolveCounters& c) {
  Json j;
  j["evaluations"] = c.evaluations;
  j["iterations"] = c.iterations;
  j["phase1_rounds"] = c.phase1_rounds;
  j["phase2_iterations"] = c.phase2_iterations;
  j["reassignments"] = c.reassignments;
  j["adds"] = c.adds;
  j["merges"] = c.merges;
  j["takes"] = c.takes;
  j["swaps"] = c.swaps;
  j["zero_marginal_placements"] = c.zero_marginal_placements;
  j["rotations"] = c.rotations;
  j["batches"] = c.batches;
  j["leftovers"] = c.leftovers;
  return j;
}

inline Json to_json(const SolveReport& r) {
  Json j;
  j["algorithm"] = r.algorithm;
  j["guarantee"] = std::string(to_string(r.guarantee));
  j["complete"] = r.complete();
  j["allocation"] = to_json(r.allocation);
  if (r.submodular_case) j["case"] = *r.submodular_case;
  if (r.phase1_width) j["phase1_width"] = *r.phase1_width;
  j["counters"] = to_json(r.counters);
  Json vs = Json::array();
  for (const auto& v : r.confirmation.violations) vs.push_back(to_json(v));
  j["confirmation"] = {{"ok", r.confirmation.ok}, {"violations", vs}};
  return j;
}

inline Json to_json(const EnumerationReport& r) {
  Json j;
  j["total_allocations"] = r.total_allocations;
  j["min_social_cost"] = r.min_social_cost;
  j["efx_count"] = r.efx_count;
  Json efx = Json::array();
  for (const auto& x : r.efx_allocations) efx.push_back(to_json(x));
  j["efx_allocations"] = efx;
  j["frontier_count"] = r.frontier_count;
  Json front = Json::array();
  for (const auto& x : r.pareto_frontier) front.push_back(to_json(x));
  j["pareto_frontier"] = front;
  j["frontier_costs"] = r.frontier_costs;
  j["efx_and_po_exists"] = r.efx_and_po_exists;
  j["efx_and_po_witness"] = r.efx_and_po_witness ? to_json(*r.efx_and_po_witness) : Json(nullptr);
  j["truncated"] = r.truncated;
  return j;
}

}  // namespace chorefair
