#pragma once

#include <string>
#include <vector>

#include "chorefair/fairness.hpp"
#include "chorefair/instance.hpp"
#include "chorefair/solve_report.hpp"
#include "chorefair/solver_cancelable.hpp"
#include "chorefair/solver_general.hpp"

namespace chorefair {

/// Items whose singleton costs 1 to every agent.
inline ItemSet compute_m1(const Instance& inst) {
  ItemSet out;
  for (int e = 0; e < inst.item_count(); ++e) {
    bool unit = true;
    for (int i = 0; i < inst.agent_count() && unit; ++i) unit = inst.cost(i, ItemSet::single(e)) == 1;
    if (unit) out.insert(e);
  }
  return out;
}

/// Complete allocation for binary submodular costs that is EFX or 2-EF.
///
/// With fewer than n universally-unit items, phase 2 of the cancelable
/// solver runs directly on the original costs and yields EFX. Otherwise
/// each agent is seeded with one such item, the envy-cycle loop runs, and
/// the fewer than n leftovers go one per agent starting from agent 0; every
/// bundle then costs at least 1 to everyone, so the result is 2-EF.
inline SolveReport solve_submodular(const Instance& inst, const SolverOptions& options = {}) {
  detail::require_class(inst, FunctionClass::submodular, "submodular", options);
  const int n = inst.agent_count();
  SolveReport report;
  report.algorithm = "submodular";
  const ItemSet unit_items = compute_m1(inst);
  report.counters.evaluations += static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(inst.item_count());

  if (unit_items.size() < n) {
    report.submodular_case = 1;
    std::vector<ResidualCost> views;
    views.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) views.emplace_back(inst.agent(i), ItemSet{});
    Phase2Stats st;
    const auto bundles = phase2(views, inst.items(), inst.item_count(), &st,
                                options.trace ? &report.trace : nullptr, options.check_invariants);
    report.counters.phase2_iterations = st.iterations;
    report.counters.iterations = st.iterations;
    report.counters.adds = st.adds;
    report.counters.merges = st.merges;
    report.counters.takes = st.takes;
    report.counters.swaps = st.swaps;
    report.counters.evaluations += st.evaluations;
    report.allocation = Allocation{bundles, ItemSet{}};
    report.confirmation = is_alpha_efx(inst, report.allocation);
    if (!report.confirmation) throw InvariantViolation("submodular case 1: output is not EFX");
    report.guarantee = Guarantee::efx;
    return report;
  }

  report.submodular_case = 2;
  Allocation& x = report.allocation;
  x = Allocation::empty(n, inst.items());
  {
    auto it = unit_items.begin();
    for (int i = 0; i < n; ++i, ++it) {
      x[i].insert(*it);
      x.unallocated.erase(*it);
      if (options.trace) report.trace.push_back({.event = "seed", .phase = "seed", .agent = i, .item = *it});
    }
  }
  run_envy_cycle_loop(inst, x, options, report);

  const int left = x.unallocated.size();
  if (left >= n) {
    throw InvariantViolation("submodular case 2: " + std::to_string(left) + " leftovers for " +
                             std::to_string(n) + " agents");
  }
  {
    int i = 0;
    for (int e : x.unallocated) {
      x[i].insert(e);
      if (options.trace) report.trace.push_back({.event = "leftover", .phase = "leftover", .agent = i, .item = e});
      ++i;
    }
    x.unallocated = ItemSet{};
    report.counters.leftovers = static_cast<std::uint64_t>(left);
  }

  if (options.check_invariants) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (inst.cost(i, x[j]) < 1) {
          throw InvariantViolation("submodular case 2: agent " + std::to_string(i) + " finds bundle " +
                                   std::to_string(j) + " free");
        }
      }
    }
    for (const Violation& v : is_alpha_ef(inst, x).violations) {
      if (inst.cost(v.i, x[v.i]) != inst.cost(v.i, x[v.j]) + 1) {
        throw InvariantViolation("submodular case 2: envy of agent " + std::to_string(v.i) +
                                 " exceeds one unit");
      }
    }
  }
  report.confirmation = is_alpha_ef(inst, x, Ratio{2, 1});
  if (!report.confirmation) throw InvariantViolation("submodular case 2: output is not 2-EF");
  report.guarantee = Guarantee::two_ef;
  return report;
}

}  // namespace chorefair
