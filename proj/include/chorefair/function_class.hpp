#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chorefair/cost_function.hpp"
#include "chorefair/random.hpp"

namespace chorefair {

enum class ClassProperty { binary_marginal, monotone, additive, cancelable, submodular };

inline std::string_view to_string(ClassProperty p) {
  switch (p) {
    case ClassProperty::binary_marginal: return "binary_marginal";
    case ClassProperty::monotone: return "monotone";
    case ClassProperty::additive: return "additive";
    case ClassProperty::cancelable: return "cancelable";
    case ClassProperty::submodular: return "submodular";
  }
  return "";
}

/// A concrete counterexample for one property.
///
///  - binary_marginal / monotone: c(S + item) - c(S) is not in {0,1} / is
///    negative; `t` is S + item.
///  - additive: c(S) differs from the sum of its singletons; `t` is empty
///    and `item` is -1.
///  - cancelable: c(S + item) > c(T + item) while c(S) <= c(T).
///  - submodular: S is a subset of T and c(item | S) < c(item | T).
struct ClassWitness {
  ClassProperty property;
  ItemSet s;
  ItemSet t;
  int item = -1;

  friend bool operator==(const ClassWitness&, const ClassWitness&) = default;
};

struct FunctionClassReport {
  bool binary_marginal = true;
  bool monotone = true;
  bool additive = true;
  bool cancelable = true;
  bool submodular = true;
  /// False for sampled reports: a `true` flag then means "no violation found".
  bool exhaustive = true;
  std::uint64_t trials = 0;
  std::vector<ClassWitness> witnesses;

  const ClassWitness* witness(ClassProperty p) const {
    for (const auto& w : witnesses) {
      if (w.property == p) return &w;
    }
    return nullptr;
  }

  bool holds(ClassProperty p) const {
    switch (p) {
      case ClassProperty::binary_marginal: return binary_marginal;
      case ClassProperty::monotone: return monotone;
      case ClassProperty::additive: return additive;
      case ClassProperty::cancelable: return cancelable;
      case ClassProperty::submodular: return submodular;
    }
    return false;
  }

  /// Smallest class containing the function. Classes below `general` are
  /// only meaningful with binary marginals.
  FunctionClass strongest() const {
    if (!binary_marginal) return FunctionClass::general;
    if (additive) return FunctionClass::additive;
    if (cancelable) return FunctionClass::cancelable;
    if (submodular) return FunctionClass::submodular;
    return FunctionClass::general;
  }

  bool in_class(FunctionClass c) const { return within(strongest(), c); }
};

inline constexpr std::uint64_t kDefaultClassSamples = 10'000;

namespace detail {

inline void record(FunctionClassReport& r, ClassProperty p, ItemSet s, ItemSet t, int item) {
  bool* flag = nullptr;
  switch (p) {
    case ClassProperty::binary_marginal: flag = &r.binary_marginal; break;
    case ClassProperty::monotone: flag = &r.monotone; break;
    case ClassProperty::additive: flag = &r.additive; break;
    case ClassProperty::cancelable: flag = &r.cancelable; break;
    case ClassProperty::submodular: flag = &r.submodular; break;
  }
  if (*flag) {
    *flag = false;
    r.witnesses.push_back({p, s, t, item});
  }
}

/// Spreads the low bits of `compact` over the positions listed in `items`.
inline ItemSet expand(std::uint32_t compact, const std::vector<int>& items) {
  ItemSet s;
  for (std::size_t b = 0; compact != 0; ++b, compact >>= 1U) {
    if ((compact & 1U) != 0) s.insert(items[b]);
  }
  return s;
}

}  // namespace detail

/// Decides every class property exhaustively over the function's domain.
///
/// Binary marginals, monotonicity and additivity are checked over all
/// (S, e). Submodularity uses the local form c(e|S) >= c(e|S+f) over all S
/// and distinct e, f outside S, which is equivalent to the global one. For
/// cancelability the (S, T) pairs for a fixed e are grouped by c(S): a
/// violation exists iff some value class v <= v' has max c(S+e) over c(S)=v
/// above min c(T+e) over c(T)=v'. The total work is O(2^k k^2) for a domain
/// of k <= 20 items.
template <SetFunction F>
FunctionClassReport check_class(const F& fn) {
  const std::vector<int> items = fn.domain().to_vector();
  const int k = static_cast<int>(items.size());
  if (k > kMaxTableItems) {
    throw UnsupportedSize("check_class: exhaustive check needs at most " +
                          std::to_string(kMaxTableItems) + " items, got " + std::to_string(k) +
                          "; use check_class_sampled");
  }
  const std::uint32_t count = std::uint32_t{1} << k;
  std::vector<Cost> value(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    value[mask] = fn.evaluate(detail::expand(mask, items));
  }
  auto set_of = [&](std::uint32_t mask) { return detail::expand(mask, items); };

  FunctionClassReport report;

  // Marginal shape.
  for (std::uint32_t mask = 0; mask < count && (report.binary_marginal || report.monotone); ++mask) {
    for (int b = 0; b < k; ++b) {
      const std::uint32_t bit = std::uint32_t{1} << b;
      if ((mask & bit) != 0) continue;
      const Cost diff = value[mask | bit] - value[mask];
      if (diff < 0) detail::record(report, ClassProperty::monotone, set_of(mask), set_of(mask | bit), items[b]);
      if (diff != 0 && diff != 1) {
        detail::record(report, ClassProperty::binary_marginal, set_of(mask), set_of(mask | bit), items[b]);
      }
    }
  }

  // Additivity: c(S) equals the sum of singleton costs, including c({}) = 0.
  {
    std::vector<Cost> sum(count, 0);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      if (mask != 0) {
        const std::uint32_t low = mask & (~mask + 1);
        sum[mask] = sum[mask ^ low] + value[low];
      }
      if (value[mask] != sum[mask]) {
        detail::record(report, ClassProperty::additive, set_of(mask), ItemSet{}, -1);
        break;
      }
    }
  }

  // Submodularity, local form.
  for (std::uint32_t mask = 0; mask < count && report.submodular; ++mask) {
    for (int a = 0; a < k && report.submodular; ++a) {
      const std::uint32_t ea = std::uint32_t{1} << a;
      if ((mask & ea) != 0) continue;
      const Cost gain = value[mask | ea] - value[mask];
      for (int b = 0; b < k; ++b) {
        const std::uint32_t fb = std::uint32_t{1} << b;
        if (b == a || (mask & fb) != 0) continue;
        const Cost later = value[mask | fb | ea] - value[mask | fb];
        if (gain < later) {
          detail::record(report, ClassProperty::submodular, set_of(mask), set_of(mask | fb), items[a]);
          break;
        }
      }
    }
  }

  // Cancelability, grouped by value.
  {
    std::vector<Cost> distinct(value);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<std::uint32_t> rank(count);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
      rank[mask] = static_cast<std::uint32_t>(
          std::lower_bound(distinct.begin(), distinct.end(), value[mask]) - distinct.begin());
    }
    constexpr std::uint32_t kNone = ~std::uint32_t{0};
    const std::size_t levels = distinct.size();
    std::vector<std::uint32_t> hi(levels), lo(levels);
    for (int a = 0; a < k && report.cancelable; ++a) {
      const std::uint32_t ea = std::uint32_t{1} << a;
      std::fill(hi.begin(), hi.end(), kNone);
      std::fill(lo.begin(), lo.end(), kNone);
      for (std::uint32_t mask = 0; mask < count; ++mask) {
        if ((mask & ea) != 0) continue;
        const std::uint32_t r = rank[mask];
        const Cost ext = value[mask | ea];
        if (hi[r] == kNone || value[hi[r] | ea] <= ext) hi[r] = mask;
        if (lo[r] == kNone || value[lo[r] | ea] > ext) lo[r] = mask;
      }
      // Sweep levels downwards keeping the minimiser over levels >= v.
      std::uint32_t best_lo = kNone;
      for (std::size_t v = levels; v-- > 0;) {
        if (lo[v] != kNone && (best_lo == kNone || value[lo[v] | ea] < value[best_lo | ea])) {
          best_lo = lo[v];
        }
        if (hi[v] != kNone && best_lo != kNone && value[hi[v] | ea] > value[best_lo | ea]) {
          detail::record(report, ClassProperty::cancelable, set_of(hi[v]), set_of(best_lo), items[a]);
          break;
        }
      }
    }
  }

  report.exhaustive = true;
  return report;
}

/// Randomised variant for domains too large to enumerate: `trials` uniformly
/// random (S, T, e) triples. Flags that stay true are "probably in class".
template <SetFunction F>
FunctionClassReport check_class_sampled(const F& fn, std::uint64_t trials = kDefaultClassSamples,
                                        std::uint64_t seed = 0) {
  const std::vector<int> items = fn.domain().to_vector();
  FunctionClassReport report;
  report.exhaustive = false;
  report.trials = trials;
  if (items.empty()) return report;
  SplitMix64 rng(seed);
  auto random_subset = [&](int skip) {
    ItemSet s;
    for (int e : items) {
      if (e != skip && rng.bernoulli(0.5)) s.insert(e);
    }
    return s;
  };
  std::vector<Cost> singleton(items.size());
  for (std::size_t b = 0; b < items.size(); ++b) singleton[b] = fn.evaluate(ItemSet::single(items[b]));
  if (fn.evaluate(ItemSet{}) != 0) detail::record(report, ClassProperty::additive, ItemSet{}, ItemSet{}, -1);

  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const int e = items[rng.below(items.size())];
    const ItemSet s = random_subset(e);
    const ItemSet t = random_subset(e);
    const Cost cs = fn.evaluate(s), ct = fn.evaluate(t);
    const Cost cse = fn.evaluate(s.with(e)), cte = fn.evaluate(t.with(e));
    const Cost diff = cse - cs;
    if (diff < 0) detail::record(report, ClassProperty::monotone, s, s.with(e), e);
    if (diff != 0 && diff != 1) detail::record(report, ClassProperty::binary_marginal, s, s.with(e), e);
    if (cse > cte && cs <= ct) detail::record(report, ClassProperty::cancelable, s, t, e);
    const ItemSet inner = s & t;
    const Cost inner_gain = fn.evaluate(inner.with(e)) - fn.evaluate(inner);
    if (inner_gain < cte - ct) detail::record(report, ClassProperty::submodular, inner, t, e);
    Cost sum = 0;
    for (std::size_t b = 0; b < items.size(); ++b) {
      if (s.contains(items[b])) sum += singleton[b];
    }
    if (sum != cs) detail::record(report, ClassProperty::additive, s, ItemSet{}, -1);
  }
  return report;
}

/// The class a single agent's function is known to belong to: the descriptor
/// kind's guarantee, or an exhaustive check for tables.
inline FunctionClass classify(const CostFunction& fn) {
  if (!fn.binary_marginal()) return FunctionClass::general;
  if (auto c = fn.class_by_construction()) return *c;
  return check_class(fn).strongest();
}

}  // namespace chorefair
