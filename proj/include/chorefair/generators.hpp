#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chorefair/cost_function.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/function_class.hpp"
#include "chorefair/instance.hpp"
#include "chorefair/random.hpp"

namespace chorefair {

enum class Family { binary_additive, capped_additive, cardinality, partition_matroid, threshold, table };

inline constexpr std::array<std::string_view, 6> kFamilyNames = {
    "binary_additive", "capped_additive", "cardinality", "partition_matroid", "threshold", "table"};

inline std::string_view to_string(Family f) { return kFamilyNames[static_cast<std::size_t>(f)]; }

inline Family parse_family(std::string_view s) {
  for (std::size_t k = 0; k < kFamilyNames.size(); ++k) {
    if (kFamilyNames[k] == s) return static_cast<Family>(k);
  }
  throw InvalidInput("unknown family '" + std::string(s) + "'");
}

/// Family parameters. Unset values are drawn per agent.
struct GeneratorParams {
  /// Probability that an item (or, for tables, a free step) costs 1.
  double p = 0.5;
  std::optional<Cost> cap;
  std::optional<int> groups;
  std::optional<Cost> k;
};

inline FunctionClass family_class(Family f) {
  switch (f) {
    case Family::binary_additive: return FunctionClass::additive;
    case Family::capped_additive:
    case Family::cardinality: return FunctionClass::cancelable;
    case Family::partition_matroid: return FunctionClass::submodular;
    default: return FunctionClass::general;
  }
}

/// Random monotone table with binary marginals, filled by increasing
/// popcount. When all c(S - e) agree the value steps up with probability p,
/// otherwise it equals their maximum (they never differ by more than one).
inline CostFunction random_binary_table(int m, SplitMix64& rng, double p = 0.5) {
  if (m < 0 || m > kMaxTableItems) {
    throw InvalidInput("table family needs m in [0, " + std::to_string(kMaxTableItems) + "]");
  }
  const std::size_t size = std::size_t{1} << m;
  std::vector<std::uint64_t> masks(size);
  for (std::size_t s = 0; s < size; ++s) masks[s] = s;
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint64_t a, std::uint64_t b) { return std::popcount(a) < std::popcount(b); });
  std::vector<Cost> values(size, 0);
  for (std::uint64_t s : masks) {
    if (s == 0) continue;
    Cost lo = std::numeric_limits<Cost>::max(), hi = 0;
    for (std::uint64_t rest = s; rest != 0; rest &= rest - 1) {
      const Cost v = values[s & ~(rest & -rest)];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    values[s] = lo == hi ? lo + (rng.bernoulli(p) ? 1 : 0) : hi;
  }
  return CostFunction::table(std::move(values));
}

/// One random cost function of the family on m items.
inline CostFunction random_cost_function(Family f, int m, SplitMix64& rng, const GeneratorParams& params = {}) {
  if (!(params.p >= 0.0 && params.p <= 1.0)) throw InvalidInput("p must lie in [0, 1]");
  auto coins = [&] {
    std::vector<Cost> costs(static_cast<std::size_t>(m));
    for (auto& c : costs) c = rng.bernoulli(params.p) ? 1 : 0;
    return costs;
  };
  auto cap_or_draw = [&]() -> Cost {
    if (params.cap) {
      if (*params.cap < 0) throw InvalidInput("cap must be non-negative");
      return *params.cap;
    }
    return rng.between(1, std::max(1, m));
  };
  switch (f) {
    case Family::binary_additive: return CostFunction::additive(coins());
    case Family::capped_additive: {
      auto costs = coins();
      return CostFunction::capped_additive(std::move(costs), cap_or_draw());
    }
    case Family::cardinality: return CostFunction::cardinality(m, cap_or_draw());
    case Family::partition_matroid: {
      int g = params.groups.value_or(static_cast<int>(rng.between(1, std::max(1, m))));
      if (g < 1) throw InvalidInput("groups must be at least 1");
      std::vector<ItemSet> groups(static_cast<std::size_t>(g));
      for (int e = 0; e < m; ++e) groups[rng.below(static_cast<std::uint64_t>(g))].insert(e);
      std::vector<Cost> caps;
      for (ItemSet s : groups) caps.push_back(rng.between(0, s.size()));
      return CostFunction::partition_matroid(m, std::move(groups), std::move(caps));
    }
    case Family::threshold: {
      if (params.k && *params.k < 0) throw InvalidInput("k must be non-negative");
      return CostFunction::threshold(m, params.k.value_or(rng.between(0, m)));
    }
    case Family::table: return random_binary_table(m, rng, params.p);
  }
  throw InvalidInput("unknown family");
}

/// Reproducible random instance: agent i draws from the i-th split of the
/// seed's stream. Tables are declared in the narrowest class all agents
/// satisfy; other families in their construction class.
inline Instance generate(Family f, int n, int m, std::uint64_t seed, const GeneratorParams& params = {}) {
  if (n < 1) throw InvalidInput("n must be at least 1");
  if (m < 0 || m > kMaxItems) throw InvalidInput("m must lie in [0, " + std::to_string(kMaxItems) + "]");
  SplitMix64 root(seed);
  std::vector<CostFunction> agents;
  agents.reserve(static_cast<std::size_t>(n));
  FunctionClass declared = family_class(f);
  if (f == Family::table) declared = FunctionClass::additive;
  for (int i = 0; i < n; ++i) {
    SplitMix64 rng = root.split();
    agents.push_back(random_cost_function(f, m, rng, params));
    if (f == Family::table) declared = std::max(declared, check_class(agents.back()).strongest());
  }
  InstanceMetadata md;
  md.name = std::string(to_string(f)) + "-n" + std::to_string(n) + "-m" + std::to_string(m) + "-s" +
            std::to_string(seed);
  md.seed = seed;
  md.family = std::string(to_string(f));
  return Instance(m, std::move(agents), declared, std::move(md));
}

inline Instance generate(std::string_view family, int n, int m, std::uint64_t seed,
                         const GeneratorParams& params = {}) {
  return generate(parse_family(family), n, m, seed, params);
}

inline constexpr std::array<std::string_view, 4> kBuiltinNames = {
    "ternary-no-efxpo", "cancelable-cap5-n2", "appendixA-submodular-4", "appendixA-cap5-function"};

/// Small named instances used as fixed counterexamples.
inline Instance builtin(std::string_view name) {
  auto labels = [](int m, std::string_view prefix, int first) {
    std::vector<std::string> out;
    for (int e = 0; e < m; ++e) out.push_back(std::string(prefix) + std::to_string(e + first));
    return out;
  };
  InstanceMetadata md;
  md.name = std::string(name);
  if (name == "ternary-no-efxpo") {
    // Additive costs 2/1/0 and 2/0/1 stored as full tables.
    auto additive_table = [](std::array<Cost, 3> c) {
      std::vector<Cost> v(8, 0);
      for (std::size_t s = 0; s < 8; ++s) {
        for (std::size_t e = 0; e < 3; ++e) {
          if ((s >> e) & 1U) v[s] += c[e];
        }
      }
      return CostFunction::table(std::move(v), TablePolicy::allow_non_binary);
    };
    md.agent_labels = {"agent1", "agent2"};
    md.item_labels = labels(3, "e", 1);
    return Instance(3, {additive_table({2, 1, 0}), additive_table({2, 0, 1})}, FunctionClass::general,
                    std::move(md));
  }
  if (name == "cancelable-cap5-n2") {
    return Instance(10, {CostFunction::cardinality(10, 5), CostFunction::cardinality(10, 5)},
                    FunctionClass::cancelable, std::move(md));
  }
  if (name == "appendixA-submodular-4") {
    std::vector<Cost> v(16);
    for (std::uint64_t s = 0; s < 16; ++s) {
      const Cost size = std::popcount(s);
      v[s] = (s & 0b0111U) == 0b0111U ? size - 1 : size;
    }
    md.item_labels = {"a", "b", "c", "d"};
    return Instance(4, {CostFunction::table(std::move(v))}, FunctionClass::submodular, std::move(md));
  }
  if (name == "appendixA-cap5-function") {
    return Instance(8, {CostFunction::cardinality(8, 5)}, FunctionClass::cancelable, std::move(md));
  }
  throw InvalidInput("unknown builtin '" + std::string(name) + "'");
}

}  // namespace chorefair
