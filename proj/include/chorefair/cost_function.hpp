#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "chorefair/errors.hpp"
#include "chorefair/item_set.hpp"

namespace chorefair {

/// Non-negative integral cost of a bundle.
using Cost = std::int64_t;

/// Function classes ordered by inclusion: every additive binary-marginal
/// function is cancelable, every cancelable one is submodular, and `general`
/// is any binary-marginal function (or anything else that fits nowhere).
enum class FunctionClass { additive = 0, cancelable = 1, submodular = 2, general = 3 };

/// True when every function of class `inner` also belongs to `outer`.
constexpr bool within(FunctionClass inner, FunctionClass outer) {
  return static_cast<int>(inner) <= static_cast<int>(outer);
}

inline std::string_view to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::additive: return "additive";
    case FunctionClass::cancelable: return "cancelable";
    case FunctionClass::submodular: return "submodular";
    case FunctionClass::general: return "general";
  }
  return "general";
}

inline FunctionClass parse_function_class(std::string_view s) {
  if (s == "additive") return FunctionClass::additive;
  if (s == "cancelable") return FunctionClass::cancelable;
  if (s == "submodular") return FunctionClass::submodular;
  if (s == "general") return FunctionClass::general;
  throw InvalidInput("unknown function class '" + std::string(s) + "'");
}

/// Anything that maps bundles inside its domain to costs.
template <class F>
concept SetFunction = requires(const F& f, ItemSet s) {
  { f.evaluate(s) } -> std::convertible_to<Cost>;
  { f.domain() } -> std::same_as<ItemSet>;
};

/// Largest item count accepted for exhaustive tables.
inline constexpr int kMaxTableItems = 20;
/// Largest item count accepted anywhere.
inline constexpr int kMaxItems = 63;

namespace descriptor {

/// c(S) = sum of costs[e] over S, costs in {0,1}.
struct Additive {
  std::vector<Cost> costs;
  friend bool operator==(const Additive&, const Additive&) = default;
};

/// c(S) = min(sum of costs[e] over S, cap).
struct CappedAdditive {
  std::vector<Cost> costs;
  Cost cap = 0;
  friend bool operator==(const CappedAdditive&, const CappedAdditive&) = default;
};

/// c(S) = min(|S|, cap).
struct Cardinality {
  Cost cap = 0;
  friend bool operator==(const Cardinality&, const Cardinality&) = default;
};

/// c(S) = sum over groups g of min(|S & g|, capacity_g). Groups partition M.
struct PartitionMatroid {
  std::vector<ItemSet> groups;
  std::vector<Cost> capacities;
  friend bool operator==(const PartitionMatroid&, const PartitionMatroid&) = default;
};

/// c(S) = max(0, |S| - k).
struct Threshold {
  Cost k = 0;
  friend bool operator==(const Threshold&, const Threshold&) = default;
};

/// Explicit value for every subset, indexed by bitmask.
struct Table {
  std::vector<Cost> values;
  friend bool operator==(const Table&, const Table&) = default;
};

}  // namespace descriptor

using Descriptor = std::variant<descriptor::Additive, descriptor::CappedAdditive,
                                descriptor::Cardinality, descriptor::PartitionMatroid,
                                descriptor::Threshold, descriptor::Table>;

/// Whether a table must have binary marginals to be accepted.
enum class TablePolicy { require_binary, allow_non_binary };

/// One agent's cost function over items {0, ..., m-1}. Immutable after
/// construction; every factory validates its descriptor.
class CostFunction {
 public:
  static CostFunction additive(std::vector<Cost> costs) {
    check_item_count(static_cast<int>(costs.size()));
    check_binary_entries(costs, "additive");
    const int m = static_cast<int>(costs.size());
    return CostFunction(m, descriptor::Additive{std::move(costs)}, true);
  }

  static CostFunction capped_additive(std::vector<Cost> costs, Cost cap) {
    check_item_count(static_cast<int>(costs.size()));
    check_binary_entries(costs, "capped_additive");
    if (cap < 0) throw InvalidInput("capped_additive: cap must be non-negative");
    const int m = static_cast<int>(costs.size());
    return CostFunction(m, descriptor::CappedAdditive{std::move(costs), cap}, true);
  }

  static CostFunction cardinality(int m, Cost cap) {
    check_item_count(m);
    if (cap < 0) throw InvalidInput("cardinality: cap must be non-negative");
    return CostFunction(m, descriptor::Cardinality{cap}, true);
  }

  static CostFunction partition_matroid(int m, std::vector<ItemSet> groups,
                                        std::vector<Cost> capacities) {
    check_item_count(m);
    if (groups.size() != capacities.size()) {
      throw InvalidInput("partition_matroid: one capacity per group required");
    }
    ItemSet seen;
    for (ItemSet g : groups) {
      if (!g.is_subset_of(ItemSet::full(m))) {
        throw InvalidInput("partition_matroid: group " + g.to_string() + " has items outside [0, " +
                           std::to_string(m) + ")");
      }
      if (g.intersects(seen)) throw InvalidInput("partition_matroid: groups overlap");
      seen |= g;
    }
    if (seen != ItemSet::full(m)) {
      throw InvalidInput("partition_matroid: groups do not cover every item");
    }
    for (Cost c : capacities) {
      if (c < 0) throw InvalidInput("partition_matroid: capacities must be non-negative");
    }
    return CostFunction(m, descriptor::PartitionMatroid{std::move(groups), std::move(capacities)},
                        true);
  }

  static CostFunction threshold(int m, Cost k) {
    check_item_count(m);
    if (k < 0) throw InvalidInput("threshold: k must be non-negative");
    return CostFunction(m, descriptor::Threshold{k}, true);
  }

  /// Table over m items; values.size() must be 2^m. Values must be
  /// non-negative, zero on the empty set and monotone. Binary marginals are
  /// required unless `policy` allows otherwise.
  static CostFunction table(std::vector<Cost> values,
                            TablePolicy policy = TablePolicy::require_binary) {
    int m = 0;
    while (m <= kMaxTableItems && (std::size_t{1} << m) < values.size()) ++m;
    if (m > kMaxTableItems || (std::size_t{1} << m) != values.size()) {
      throw InvalidInput("table: value count must be 2^m with m <= " +
                         std::to_string(kMaxTableItems));
    }
    if (values[0] != 0) throw InvalidInput("table: value of the empty set must be 0");
    bool binary = true;
    for (std::size_t mask = 0; mask < values.size(); ++mask) {
      if (values[mask] < 0) throw InvalidInput("table: negative value at mask " + std::to_string(mask));
      for (int e = 0; e < m; ++e) {
        const std::size_t b = std::size_t{1} << e;
        if ((mask & b) != 0) continue;
        const Cost diff = values[mask | b] - values[mask];
        if (diff < 0) {
          throw InvalidInput("table: not monotone at mask " + std::to_string(mask) + " + item " +
                             std::to_string(e));
        }
        if (diff > 1) binary = false;
      }
    }
    if (!binary && policy == TablePolicy::require_binary) {
      throw InvalidInput("table: marginals must be 0 or 1");
    }
    return CostFunction(m, descriptor::Table{std::move(values)}, binary);
  }

  int item_count() const { return m_; }
  ItemSet domain() const { return ItemSet::full(m_); }
  const Descriptor& descriptor() const { return descriptor_; }

  /// Every marginal is 0 or 1 (by construction, or verified for tables).
  bool binary_marginal() const { return binary_; }

  std::string_view kind() const {
    static constexpr std::string_view kNames[] = {"additive",          "capped_additive",
                                                  "cardinality",       "partition_matroid",
                                                  "threshold",         "table"};
    return kNames[descriptor_.index()];
  }

  /// The class this descriptor kind belongs to without inspecting values;
  /// nullopt for tables.
  std::optional<FunctionClass> class_by_construction() const {
    return std::visit(
        [](const auto& d) -> std::optional<FunctionClass> {
          using T = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<T, descriptor::Additive>) return FunctionClass::additive;
          if constexpr (std::is_same_v<T, descriptor::CappedAdditive> ||
                        std::is_same_v<T, descriptor::Cardinality>) {
            return FunctionClass::cancelable;
          }
          if constexpr (std::is_same_v<T, descriptor::PartitionMatroid>) {
            return FunctionClass::submodular;
          }
          if constexpr (std::is_same_v<T, descriptor::Threshold>) return FunctionClass::general;
          return std::nullopt;
        },
        descriptor_);
  }

  Cost evaluate(ItemSet s) const {
    if (!s.is_subset_of(domain())) {
      throw InvalidInput("bundle " + s.to_string() + " has items outside [0, " +
                         std::to_string(m_) + ")");
    }
    return std::visit([s](const auto& d) { return eval(d, s); }, descriptor_);
  }

  /// c(S + e) - c(S); e must not be in S.
  Cost marginal(int e, ItemSet s) const {
    if (s.contains(e)) throw InvalidInput("marginal: item " + std::to_string(e) + " already in S");
    if (e < 0 || e >= m_) throw InvalidInput("marginal: item " + std::to_string(e) + " out of range");
    return evaluate(s.with(e)) - evaluate(s);
  }

  friend bool operator==(const CostFunction& a, const CostFunction& b) {
    return a.m_ == b.m_ && a.descriptor_ == b.descriptor_;
  }

 private:
  CostFunction(int m, Descriptor d, bool binary) : m_(m), descriptor_(std::move(d)), binary_(binary) {}

  static void check_item_count(int m) {
    if (m < 0 || m > kMaxItems) {
      throw InvalidInput("item count " + std::to_string(m) + " outside [0, " +
                         std::to_string(kMaxItems) + "]");
    }
  }

  static void check_binary_entries(const std::vector<Cost>& costs, std::string_view kind) {
    for (Cost c : costs) {
      if (c != 0 && c != 1) throw InvalidInput(std::string(kind) + ": costs must be 0 or 1");
    }
  }

  static Cost sum_over(const std::vector<Cost>& costs, ItemSet s) {
    Cost total = 0;
    for (int e : s) total += costs[static_cast<std::size_t>(e)];
    return total;
  }

  static Cost eval(const descriptor::Additive& d, ItemSet s) { return sum_over(d.costs, s); }
  static Cost eval(const descriptor::CappedAdditive& d, ItemSet s) {
    return std::min(sum_over(d.costs, s), d.cap);
  }
  static Cost eval(const descriptor::Cardinality& d, ItemSet s) {
    return std::min<Cost>(s.size(), d.cap);
  }
  static Cost eval(const descriptor::PartitionMatroid& d, ItemSet s) {
    Cost total = 0;
    for (std::size_t g = 0; g < d.groups.size(); ++g) {
      total += std::min<Cost>((s & d.groups[g]).size(), d.capacities[g]);
    }
    return total;
  }
  static Cost eval(const descriptor::Threshold& d, ItemSet s) {
    return std::max<Cost>(0, s.size() - d.k);
  }
  static Cost eval(const descriptor::Table& d, ItemSet s) {
    return d.values[static_cast<std::size_t>(s.bits())];
  }

  int m_ = 0;
  Descriptor descriptor_;
  bool binary_ = true;
};

/// The residual cost d(S) = c(S | A) = c(S + A) - c(A), defined on items
/// outside A. Non-owning: the underlying function must outlive the view.
class ResidualCost {
 public:
  ResidualCost(const CostFunction& fn, ItemSet base)
      : fn_(&fn), base_(base), base_cost_(fn.evaluate(base)) {}

  const CostFunction& underlying() const { return *fn_; }
  ItemSet base() const { return base_; }
  ItemSet domain() const { return fn_->domain() - base_; }

  Cost evaluate(ItemSet s) const {
    if (s.intersects(base_)) {
      throw InvalidInput("residual: bundle " + s.to_string() + " overlaps the base set " +
                         base_.to_string());
    }
    return fn_->evaluate(s | base_) - base_cost_;
  }

  Cost marginal(int e, ItemSet s) const {
    if (s.contains(e)) throw InvalidInput("marginal: item " + std::to_string(e) + " already in S");
    return evaluate(s.with(e)) - evaluate(s);
  }

 private:
  const CostFunction* fn_;
  ItemSet base_;
  Cost base_cost_;
};

inline ResidualCost residual(const CostFunction& fn, ItemSet base) { return {fn, base}; }

/// c(S) for any set function; spelled as a free function for symmetry.
template <SetFunction F>
Cost evaluate(const F& fn, ItemSet s) {
  return fn.evaluate(s);
}

template <SetFunction F>
Cost marginal(const F& fn, int e, ItemSet s) {
  return fn.marginal(e, s);
}

}  // namespace chorefair
