#pragma once

#include <string>

#include "chorefair/fairness.hpp"
#include "chorefair/instance.hpp"
#include "chorefair/solve_report.hpp"

namespace chorefair {

/// Items some agent finds free (`zero`) and items costing 1 to everyone
/// (`plus`).
struct ItemPartition {
  ItemSet zero;
  ItemSet plus;
};

/// Splits the items of a binary additive instance.
inline ItemPartition partition_items(const Instance& inst, const SolverOptions& options = {}) {
  detail::require_class(inst, FunctionClass::additive, "additive", options);
  ItemPartition p;
  for (int e = 0; e < inst.item_count(); ++e) {
    bool free_for_someone = false;
    for (int i = 0; i < inst.agent_count() && !free_for_someone; ++i) {
      free_for_someone = inst.cost(i, ItemSet::single(e)) == 0;
    }
    (free_for_someone ? p.zero : p.plus).insert(e);
  }
  return p;
}

/// EFX and Pareto-optimal allocation for binary additive costs.
///
/// Free items go to the lowest-indexed agent who finds them free. Items
/// costing 1 to everyone are then handed out one per round (lowest index
/// first) to the agent with the currently cheapest bundle. If the receiver
/// becomes non-EFX towards some agent j, the item goes to j instead and
/// every item of X_j the receiver finds free moves to the receiver. Social
/// cost stays |plus|, the minimum possible, which certifies PO.
inline SolveReport solve_additive(const Instance& inst, const SolverOptions& options = {}) {
  const ItemPartition part = partition_items(inst, options);
  const int n = inst.agent_count();

  SolveReport report;
  report.algorithm = "additive";
  Allocation& x = report.allocation;
  x = Allocation::empty(n, inst.items());
  auto cost = [&](int i, ItemSet s) {
    ++report.counters.evaluations;
    return inst.cost(i, s);
  };
  auto emit = [&](TraceEvent ev) {
    if (options.trace) report.trace.push_back(std::move(ev));
  };
  report.counters.evaluations += static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(inst.item_count());

  for (int e : part.zero) {
    for (int i = 0; i < n; ++i) {
      if (cost(i, ItemSet::single(e)) == 0) {
        x[i].insert(e);
        x.unallocated.erase(e);
        emit({.event = "place_free", .phase = "1", .agent = i, .item = e});
        break;
      }
    }
  }

  std::uint64_t round = 0;
  while (!x.unallocated.empty()) {
    ++round;
    const int e = x.unallocated.lowest();
    x.unallocated.erase(e);

    int receiver = 0;
    Cost best = cost(0, x[0]);
    for (int i = 1; i < n; ++i) {
      const Cost c = cost(i, x[i]);
      if (c < best) {
        best = c;
        receiver = i;
      }
    }
    const ItemSet before = x[receiver];
    x[receiver].insert(e);
    emit({.event = "assign", .phase = "2", .round = round, .agent = receiver, .item = e});

    // Largest cost the receiver sees after dropping one item.
    Cost worst = 0;
    for (int f : x[receiver]) worst = std::max(worst, cost(receiver, x[receiver].without(f)));
    int target = -1;
    for (int j = 0; j < n && target < 0; ++j) {
      if (j != receiver && worst > cost(receiver, x[j])) target = j;
    }

    if (target >= 0) {
      ++report.counters.reassignments;
      const Cost receiver_cost = inst.cost(receiver, before);
      const Cost target_cost = inst.cost(target, x[target]);
      if (receiver_cost != target_cost) {
        throw InvariantViolation("additive: reassignment with unequal bundle costs " +
                                 std::to_string(receiver_cost) + " vs " + std::to_string(target_cost));
      }
      x[receiver].erase(e);
      x[target].insert(e);
      ItemSet moved;
      for (int f : x[target]) {
        if (cost(receiver, ItemSet::single(f)) == 0) moved.insert(f);
      }
      x[target] -= moved;
      x[receiver] |= moved;
      for (int f : x[target]) {
        if (!part.plus.contains(f) || inst.cost(receiver, ItemSet::single(f)) != 1) {
          throw InvariantViolation("additive: item " + std::to_string(f) +
                                   " left with the displaced agent is not a unit-cost item");
        }
      }
      emit({.event = "reassign",
            .phase = "2",
            .round = round,
            .agent = receiver,
            .other = target,
            .item = e,
            .items = moved.to_vector()});
    }

    if (options.check_invariants) {
      const CheckResult efx = is_alpha_efx(inst, x);
      if (!efx) throw InvariantViolation("additive: partial allocation not EFX after round " + std::to_string(round));
    }
  }
  report.counters.iterations = round;

  report.confirmation = is_alpha_efx(inst, x);
  const Cost sc = social_cost(inst, x);
  if (!report.confirmation || sc != part.plus.size()) {
    throw InvariantViolation("additive: output fails EFX or minimum social cost (" + std::to_string(sc) +
                             " vs " + std::to_string(part.plus.size()) + ")");
  }
  report.guarantee = Guarantee::efx_and_po;
  return report;
}

}  // namespace chorefair
