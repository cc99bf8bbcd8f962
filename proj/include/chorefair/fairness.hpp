#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chorefair/allocation.hpp"
#include "chorefair/cost_function.hpp"
#include "chorefair/enumeration.hpp"
#include "chorefair/instance.hpp"

namespace chorefair {

/// Exact rational approximation factor alpha = num / den.
struct Ratio {
  std::int64_t num = 1;
  std::int64_t den = 1;

  /// Accepts "p/q" or "p".
  static Ratio parse(std::string_view text) {
    auto parse_int = [&](std::string_view part) {
      std::int64_t v = 0;
      const auto* end = part.data() + part.size();
      auto [ptr, ec] = std::from_chars(part.data(), end, v);
      if (ec != std::errc{} || ptr != end || part.empty()) {
        throw InvalidInput("malformed ratio '" + std::string(text) + "'");
      }
      return v;
    };
    Ratio r;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      r.num = parse_int(text.substr(0, slash));
      r.den = parse_int(text.substr(slash + 1));
    } else {
      r.num = parse_int(text);
    }
    if (r.den <= 0) throw InvalidInput("ratio denominator must be positive");
    return r;
  }

  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

  /// lhs <= alpha * rhs, by cross-multiplication.
  bool allows(Cost lhs, Cost rhs) const { return lhs * den <= rhs * num; }

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

inline void require_alpha(Ratio alpha) {
  if (alpha.den <= 0 || alpha.num < alpha.den) {
    throw InvalidInput("alpha must be >= 1, got " + alpha.to_string());
  }
}

/// Agent i violates the criterion towards agent j; `item` is the removed
/// item for EFX-type criteria.
struct Violation {
  int i = 0;
  int j = 0;
  std::optional<int> item;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct CheckResult {
  bool ok = true;
  std::vector<Violation> violations;

  explicit operator bool() const { return ok; }
};

/// c_i(X_i) <= alpha c_i(X_j) for all i != j, over the given bundles.
template <SetFunction F>
CheckResult alpha_ef(std::span<const F> fns, std::span<const ItemSet> bundles, Ratio alpha) {
  require_alpha(alpha);
  CheckResult result;
  const int n = static_cast<int>(bundles.size());
  for (int i = 0; i < n; ++i) {
    const F& fn = fns[static_cast<std::size_t>(i)];
    const Cost own = fn.evaluate(bundles[static_cast<std::size_t>(i)]);
    if (own == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (!alpha.allows(own, fn.evaluate(bundles[static_cast<std::size_t>(j)]))) {
        result.ok = false;
        result.violations.push_back({i, j, std::nullopt});
      }
    }
  }
  return result;
}

/// X_i empty or c_i(X_i - e) <= alpha c_i(X_j) for all i != j and e in X_i.
/// The reported item is the removal leaving the largest cost (lowest index
/// on ties).
template <SetFunction F>
CheckResult alpha_efx(std::span<const F> fns, std::span<const ItemSet> bundles, Ratio alpha) {
  require_alpha(alpha);
  CheckResult result;
  const int n = static_cast<int>(bundles.size());
  for (int i = 0; i < n; ++i) {
    const F& fn = fns[static_cast<std::size_t>(i)];
    const ItemSet own = bundles[static_cast<std::size_t>(i)];
    if (own.empty()) continue;
    Cost worst = -1;
    int worst_item = -1;
    for (int e : own) {
      const Cost c = fn.evaluate(own.without(e));
      if (c > worst) {
        worst = c;
        worst_item = e;
      }
    }
    if (worst == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (!alpha.allows(worst, fn.evaluate(bundles[static_cast<std::size_t>(j)]))) {
        result.ok = false;
        result.violations.push_back({i, j, worst_item});
      }
    }
  }
  return result;
}

/// Sum over agents of c_i(X_i).
inline Cost social_cost(const Instance& inst, const Allocation& x) {
  x.validate(inst.agent_count(), inst.item_count());
  Cost total = 0;
  for (int i = 0; i < inst.agent_count(); ++i) total += inst.cost(i, x[i]);
  return total;
}

/// Alpha-EF over held bundles; alpha = 1 is envy-freeness.
inline CheckResult is_alpha_ef(const Instance& inst, const Allocation& x, Ratio alpha = {}) {
  x.validate(inst.agent_count(), inst.item_count());
  return alpha_ef(inst.agents(), std::span<const ItemSet>(x.bundles), alpha);
}

/// Alpha-EFX over held bundles; unallocated items are ignored.
inline CheckResult is_alpha_efx(const Instance& inst, const Allocation& x, Ratio alpha = {}) {
  x.validate(inst.agent_count(), inst.item_count());
  return alpha_efx(inst.agents(), std::span<const ItemSet>(x.bundles), alpha);
}

struct ParetoResult {
  bool pareto_optimal = true;
  /// Lexicographically first dominating allocation when not PO.
  std::optional<Allocation> dominating;

  explicit operator bool() const { return pareto_optimal; }
};

/// Per-agent costs of a complete allocation.
inline std::vector<Cost> cost_vector(const Instance& inst, const Allocation& x) {
  std::vector<Cost> costs(static_cast<std::size_t>(inst.agent_count()));
  for (int i = 0; i < inst.agent_count(); ++i) costs[static_cast<std::size_t>(i)] = inst.cost(i, x[i]);
  return costs;
}

/// True when `a` Pareto-dominates `b`.
inline bool dominates(std::span<const Cost> a, std::span<const Cost> b) {
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

/// Decides Pareto-optimality of a complete allocation by enumerating every
/// complete allocation.
inline ParetoResult is_po_bruteforce(const Instance& inst, const Allocation& x,
                                     std::uint64_t limit = kDefaultEnumerationLimit) {
  x.validate(inst.agent_count(), inst.item_count());
  if (!x.complete()) throw InvalidInput("Pareto-optimality is only defined for complete allocations");
  const std::vector<Cost> own = cost_vector(inst, x);
  std::vector<Cost> costs(own.size());
  ParetoResult result;
  enumerate_allocations(
      inst,
      [&](const Allocation& y) {
        for (int i = 0; i < inst.agent_count(); ++i) costs[static_cast<std::size_t>(i)] = inst.cost(i, y[i]);
        if (dominates(costs, own)) {
          result.pareto_optimal = false;
          result.dominating = y;
          return false;
        }
        return true;
      },
      limit);
  return result;
}

struct LabeledViolation {
  std::string criterion;
  Violation violation;
};

/// Every fairness and efficiency verdict for one allocation.
struct FairnessReport {
  bool ef = true;
  bool efx = true;
  Ratio alpha;
  bool alpha_ef = true;
  bool alpha_efx = true;
  /// Present only when the brute-force PO check ran.
  std::optional<bool> po;
  std::optional<Allocation> dominating;
  Cost social_cost = 0;
  bool complete = true;
  std::vector<LabeledViolation> violations;
};

inline FairnessReport fairness_report(const Instance& inst, const Allocation& x, Ratio alpha = {},
                                      bool run_po = false,
                                      std::uint64_t limit = kDefaultEnumerationLimit) {
  require_alpha(alpha);
  FairnessReport report;
  report.alpha = alpha;
  report.social_cost = social_cost(inst, x);
  report.complete = x.complete();
  auto take = [&](const char* label, CheckResult r, bool& flag) {
    flag = r.ok;
    for (const auto& v : r.violations) report.violations.push_back({label, v});
  };
  take("ef", is_alpha_ef(inst, x), report.ef);
  take("efx", is_alpha_efx(inst, x), report.efx);
  if (alpha != Ratio{}) {
    take("alpha-ef", is_alpha_ef(inst, x, alpha), report.alpha_ef);
    take("alpha-efx", is_alpha_efx(inst, x, alpha), report.alpha_efx);
  } else {
    report.alpha_ef = report.ef;
    report.alpha_efx = report.efx;
  }
  if (run_po) {
    const ParetoResult po = is_po_bruteforce(inst, x, limit);
    report.po = po.pareto_optimal;
    report.dominating = po.dominating;
  }
  return report;
}

}  // namespace chorefair
