#pragma once

#include <span>
#include <string>
#include <vector>

#include "chorefair/cost_function.hpp"
#include "chorefair/fairness.hpp"
#include "chorefair/instance.hpp"
#include "chorefair/solve_report.hpp"

namespace chorefair {

/// Output of the balancing phase: n bundles of equal size `width`.
struct Phase1Result {
  std::vector<ItemSet> base;
  int width = 0;
  ItemSet remaining;
  std::uint64_t rounds = 0;
};

/// Repeatedly hands one item to every agent while at least n unallocated
/// items each have marginal cost 1 for every agent with respect to that
/// agent's current bundle. Qualifying items are taken in index order; the
/// k-th goes to agent k.
///
/// For cancelable inputs every agent then values every bundle at exactly
/// `width`; this is asserted and a violation raises InvariantViolation.
inline Phase1Result phase1(const Instance& inst, SolveReport* report = nullptr) {
  const int n = inst.agent_count();
  Phase1Result out;
  out.base.assign(static_cast<std::size_t>(n), ItemSet{});
  out.remaining = inst.items();
  auto cost = [&](int i, ItemSet s) {
    if (report != nullptr) ++report->counters.evaluations;
    return inst.cost(i, s);
  };
  std::vector<Cost> own(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<int> picked;
    for (int e : out.remaining) {
      bool unit_for_all = true;
      for (int i = 0; i < n && unit_for_all; ++i) {
        unit_for_all = cost(i, out.base[static_cast<std::size_t>(i)].with(e)) - own[static_cast<std::size_t>(i)] == 1;
      }
      if (unit_for_all) picked.push_back(e);
      if (static_cast<int>(picked.size()) == n) break;
    }
    if (static_cast<int>(picked.size()) < n) break;
    ++out.rounds;
    for (int i = 0; i < n; ++i) {
      const int e = picked[static_cast<std::size_t>(i)];
      out.base[static_cast<std::size_t>(i)].insert(e);
      out.remaining.erase(e);
      own[static_cast<std::size_t>(i)] += 1;
    }
  }
  out.width = static_cast<int>(out.rounds);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Cost c = inst.cost(i, out.base[static_cast<std::size_t>(j)]);
      if (c != out.width) {
        throw InvariantViolation("cancelable phase 1: agent " + std::to_string(i) + " values bundle " +
                                 std::to_string(j) + " at " + std::to_string(c) + ", expected " +
                                 std::to_string(out.width) + " (input is not cancelable)");
      }
    }
  }
  return out;
}

struct Phase2Stats {
  std::uint64_t iterations = 0;
  std::uint64_t adds = 0;
  std::uint64_t merges = 0;
  std::uint64_t takes = 0;
  std::uint64_t swaps = 0;
  std::uint64_t evaluations = 0;
};

/// Allocates `remaining` among n agents whose costs are the residual views
/// `d`, keeping the bundles EFX with respect to `d` and every own-bundle
/// cost at most 1.
///
/// Items costing 1 to every agent (fewer than n of them) seed the first
/// bundles. Each further item, lowest index first, is
///  - added to the lowest i with d_i(e | B_i) = 0 whose bundle stays EFX;
///  - else, for the lowest i with d_i(B_i) = 0: merged as B_i += B_j,
///    B_j = {e} for the lowest j != i with d_i(B_j) = 0, or taken as
///    B_i += e when no such j exists;
///  - else the lowest pair i != j with d_i(B_j) = 0 swaps bundles and the
///    item waits for the next iteration.
/// At most 2 * total_items iterations run; both properties are asserted
/// after each when `check_invariants` is set.
inline std::vector<ItemSet> phase2(std::span<const ResidualCost> d, ItemSet remaining, int total_items,
                                   Phase2Stats* stats = nullptr, std::vector<TraceEvent>* trace = nullptr,
                                   bool check_invariants = true) {
  const int n = static_cast<int>(d.size());
  Phase2Stats local;
  Phase2Stats& st = stats != nullptr ? *stats : local;
  auto cost = [&](int i, ItemSet s) {
    ++st.evaluations;
    return d[static_cast<std::size_t>(i)].evaluate(s);
  };
  auto emit = [&](TraceEvent ev) {
    if (trace != nullptr) trace->push_back(std::move(ev));
  };

  std::vector<ItemSet> bundles(static_cast<std::size_t>(n));
  auto bundle = [&](int i) -> ItemSet& { return bundles[static_cast<std::size_t>(i)]; };

  ItemSet unit_items;
  for (int e : remaining) {
    bool unit = true;
    for (int i = 0; i < n && unit; ++i) unit = cost(i, ItemSet::single(e)) == 1;
    if (unit) unit_items.insert(e);
  }
  if (unit_items.size() >= n) {
    throw InvariantViolation("phase 2: " + std::to_string(unit_items.size()) +
                             " items cost 1 to every agent, expected fewer than " + std::to_string(n));
  }
  {
    int i = 0;
    for (int e : unit_items) {
      bundle(i).insert(e);
      emit({.event = "seed", .phase = "2", .agent = i, .item = e});
      ++i;
    }
  }
  ItemSet pool = remaining - unit_items;

  auto efx_wrt_d = [&] { return alpha_efx(d, std::span<const ItemSet>(bundles), Ratio{}).ok; };
  auto check_state = [&] {
    if (!check_invariants) return;
    for (int i = 0; i < n; ++i) {
      if (d[static_cast<std::size_t>(i)].evaluate(bundle(i)) > 1) {
        throw InvariantViolation("phase 2: agent " + std::to_string(i) + " holds residual cost above 1");
      }
    }
    if (!efx_wrt_d()) {
      throw InvariantViolation("phase 2: bundles not EFX for the residual costs after iteration " +
                               std::to_string(st.iterations));
    }
  };
  check_state();

  const std::uint64_t bound = 2 * static_cast<std::uint64_t>(total_items);
  while (!pool.empty()) {
    ++st.iterations;
    if (st.iterations > bound) {
      throw InvariantViolation("phase 2: exceeded " + std::to_string(bound) + " iterations");
    }
    const int e = pool.lowest();

    bool placed = false;
    for (int i = 0; i < n && !placed; ++i) {
      if (cost(i, bundle(i).with(e)) - cost(i, bundle(i)) != 0) continue;
      bundle(i).insert(e);
      if (efx_wrt_d()) {
        placed = true;
        ++st.adds;
        emit({.event = "add", .phase = "2", .round = st.iterations, .agent = i, .item = e});
      } else {
        bundle(i).erase(e);
      }
    }

    if (!placed) {
      int zero_owner = -1;
      for (int i = 0; i < n && zero_owner < 0; ++i) {
        if (cost(i, bundle(i)) == 0) zero_owner = i;
      }
      if (zero_owner >= 0) {
        const int i = zero_owner;
        int partner = -1;
        for (int j = 0; j < n && partner < 0; ++j) {
          if (j != i && cost(i, bundle(j)) == 0) partner = j;
        }
        if (partner >= 0) {
          bundle(i) |= bundle(partner);
          bundle(partner) = ItemSet::single(e);
          ++st.merges;
          emit({.event = "merge", .phase = "2", .round = st.iterations, .agent = i, .other = partner, .item = e});
        } else {
          bundle(i).insert(e);
          ++st.takes;
          emit({.event = "take", .phase = "2", .round = st.iterations, .agent = i, .item = e});
        }
        placed = true;
      } else {
        int from = -1, to = -1;
        for (int i = 0; i < n && from < 0; ++i) {
          for (int j = 0; j < n; ++j) {
            if (j != i && cost(i, bundle(j)) == 0) {
              from = i;
              to = j;
              break;
            }
          }
        }
        if (from < 0) {
          throw InvariantViolation("phase 2: no agent finds any bundle free; residual costs are not submodular");
        }
        std::swap(bundle(from), bundle(to));
        ++st.swaps;
        emit({.event = "swap", .phase = "2", .round = st.iterations, .agent = from, .other = to, .item = e});
      }
    }
    if (placed) pool.erase(e);
    check_state();
  }
  return bundles;
}

/// EFX allocation for binary cancelable costs: a balancing phase followed
/// by phase 2 on the residual costs; agent i receives A_i plus B_i.
inline SolveReport solve_cancelable(const Instance& inst, const SolverOptions& options = {}) {
  detail::require_class(inst, FunctionClass::cancelable, "cancelable", options);
  const int n = inst.agent_count();
  SolveReport report;
  report.algorithm = "cancelable";

  const Phase1Result p1 = phase1(inst, &report);
  report.phase1_width = p1.width;
  report.counters.phase1_rounds = p1.rounds;
  if (options.trace) {
    for (int i = 0; i < n; ++i) {
      report.trace.push_back({.event = "phase1_bundle",
                              .phase = "1",
                              .round = p1.rounds,
                              .agent = i,
                              .items = p1.base[static_cast<std::size_t>(i)].to_vector()});
    }
  }

  std::vector<ResidualCost> views;
  views.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) views.emplace_back(inst.agent(i), p1.base[static_cast<std::size_t>(i)]);

  Phase2Stats st;
  const std::vector<ItemSet> b = phase2(views, p1.remaining, inst.item_count(), &st,
                                        options.trace ? &report.trace : nullptr, options.check_invariants);
  report.counters.phase2_iterations = st.iterations;
  report.counters.iterations = p1.rounds + st.iterations;
  report.counters.adds = st.adds;
  report.counters.merges = st.merges;
  report.counters.takes = st.takes;
  report.counters.swaps = st.swaps;
  report.counters.evaluations += st.evaluations;

  report.allocation = Allocation::empty(n);
  for (int i = 0; i < n; ++i) {
    report.allocation[i] = p1.base[static_cast<std::size_t>(i)] | b[static_cast<std::size_t>(i)];
  }
  report.confirmation = is_alpha_efx(inst, report.allocation);
  if (!report.confirmation) throw InvariantViolation("cancelable: final allocation is not EFX");
  report.guarantee = Guarantee::efx;
  return report;
}

}  // namespace chorefair
