#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "chorefair/allocation.hpp"
#include "chorefair/enumeration.hpp"
#include "chorefair/fairness.hpp"
#include "chorefair/instance.hpp"

namespace chorefair {

struct EnumerationOptions {
  std::uint64_t limit = kDefaultEnumerationLimit;
  /// Worker threads; results do not depend on it.
  unsigned jobs = 1;
  /// At most this many allocations are listed per category; counts stay exact.
  std::size_t max_listed = 1000;
};

/// Ground truth over every complete allocation of a small instance.
struct EnumerationReport {
  std::uint64_t total_allocations = 0;
  std::uint64_t efx_count = 0;
  std::vector<Allocation> efx_allocations;
  std::uint64_t frontier_count = 0;
  std::vector<Allocation> pareto_frontier;
  /// Distinct non-dominated cost vectors, sorted.
  std::vector<std::vector<Cost>> frontier_costs;
  bool efx_and_po_exists = false;
  std::optional<Allocation> efx_and_po_witness;
  Cost min_social_cost = 0;
  /// True when a list was cut at `max_listed`.
  bool truncated = false;
};

namespace detail {

inline bool is_efx(const Instance& inst, const Allocation& x) {
  return alpha_efx(inst.agents(), std::span<const ItemSet>(x.bundles), Ratio{}).ok;
}

}  // namespace detail

/// Enumerates all n^m allocations twice: once for the set of achievable cost
/// vectors (giving the frontier and the minimum social cost), once to list
/// EFX allocations, frontier members and their intersection.
inline EnumerationReport analyze(const Instance& inst, const EnumerationOptions& options = {}) {
  const int n = inst.agent_count(), m = inst.item_count();
  const std::uint64_t total = require_enumerable(n, m, options.limit);
  const unsigned jobs = std::max(1U, options.jobs);

  struct CostPass {
    std::set<std::vector<Cost>> vectors;
    Cost min_sc = std::numeric_limits<Cost>::max();
  };
  std::vector<CostPass> first(jobs);
  for_each_chunk(total, jobs, [&](unsigned c, std::uint64_t b, std::uint64_t e) {
    CostPass& out = first[c];
    std::vector<Cost> costs(static_cast<std::size_t>(n));
    enumerate_range(n, m, b, e, [&](const Allocation& x) {
      Cost sc = 0;
      for (int i = 0; i < n; ++i) sc += costs[static_cast<std::size_t>(i)] = inst.cost(i, x[i]);
      out.vectors.insert(costs);
      out.min_sc = std::min(out.min_sc, sc);
    });
  });
  std::set<std::vector<Cost>> vectors;
  EnumerationReport report;
  report.total_allocations = total;
  report.min_social_cost = std::numeric_limits<Cost>::max();
  for (auto& part : first) {
    vectors.merge(part.vectors);
    report.min_social_cost = std::min(report.min_social_cost, part.min_sc);
  }
  // A dominator has a strictly smaller sum, and domination is transitive,
  // so scanning by ascending sum only needs the frontier found so far.
  std::vector<const std::vector<Cost>*> by_sum;
  for (const auto& v : vectors) by_sum.push_back(&v);
  auto sum = [](const std::vector<Cost>& v) {
    Cost s = 0;
    for (Cost c : v) s += c;
    return s;
  };
  std::stable_sort(by_sum.begin(), by_sum.end(), [&](auto* a, auto* b) { return sum(*a) < sum(*b); });
  for (const auto* v : by_sum) {
    bool dominated = false;
    for (const auto& u : report.frontier_costs) {
      if (dominates(u, *v)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) report.frontier_costs.push_back(*v);
  }
  std::sort(report.frontier_costs.begin(), report.frontier_costs.end());
  const std::set<std::vector<Cost>> frontier(report.frontier_costs.begin(), report.frontier_costs.end());

  struct ListPass {
    std::uint64_t efx_count = 0, frontier_count = 0;
    std::vector<Allocation> efx, front;
    std::optional<Allocation> both;
    bool truncated = false;
  };
  std::vector<ListPass> second(jobs);
  for_each_chunk(total, jobs, [&](unsigned c, std::uint64_t b, std::uint64_t e) {
    ListPass& out = second[c];
    std::vector<Cost> costs(static_cast<std::size_t>(n));
    enumerate_range(n, m, b, e, [&](const Allocation& x) {
      for (int i = 0; i < n; ++i) costs[static_cast<std::size_t>(i)] = inst.cost(i, x[i]);
      const bool po = frontier.contains(costs);
      const bool efx = detail::is_efx(inst, x);
      if (efx) {
        ++out.efx_count;
        if (out.efx.size() < options.max_listed) out.efx.push_back(x); else out.truncated = true;
      }
      if (po) {
        ++out.frontier_count;
        if (out.front.size() < options.max_listed) out.front.push_back(x); else out.truncated = true;
      }
      if (efx && po && !out.both) out.both = x;
    });
  });
  for (auto& part : second) {
    report.efx_count += part.efx_count;
    report.frontier_count += part.frontier_count;
    for (auto& x : part.efx) {
      if (report.efx_allocations.size() < options.max_listed) report.efx_allocations.push_back(std::move(x));
    }
    for (auto& x : part.front) {
      if (report.pareto_frontier.size() < options.max_listed) report.pareto_frontier.push_back(std::move(x));
    }
    if (!report.efx_and_po_witness && part.both) report.efx_and_po_witness = part.both;
    report.truncated = report.truncated || part.truncated;
  }
  report.truncated = report.truncated || report.efx_count > report.efx_allocations.size() ||
                     report.frontier_count > report.pareto_frontier.size();
  report.efx_and_po_exists = report.efx_and_po_witness.has_value();
  return report;
}

struct EfxSearchResult {
  bool exists = false;
  /// Lexicographically first complete EFX allocation.
  std::optional<Allocation> witness;
};

/// Searches for any complete EFX allocation, stopping at the first one.
inline EfxSearchResult efx_exists_search(const Instance& inst, const EnumerationOptions& options = {}) {
  const int n = inst.agent_count(), m = inst.item_count();
  const std::uint64_t total = require_enumerable(n, m, options.limit);
  const unsigned jobs = std::max(1U, options.jobs);
  std::vector<std::optional<Allocation>> found(jobs);
  for_each_chunk(total, jobs, [&](unsigned c, std::uint64_t b, std::uint64_t e) {
    enumerate_range(n, m, b, e, [&](const Allocation& x) {
      if (!detail::is_efx(inst, x)) return true;
      found[c] = x;
      return false;
    });
  });
  EfxSearchResult result;
  for (auto& f : found) {
    if (f) {
      result.exists = true;
      result.witness = std::move(f);
      break;
    }
  }
  return result;
}

}  // namespace chorefair
