#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chorefair/envy_graph.hpp"
#include "chorefair/fairness.hpp"
#include "chorefair/instance.hpp"
#include "chorefair/solve_report.hpp"

namespace chorefair {

/// The envy-cycle loop: grows an envy-free partial allocation `x` until no
/// rule applies or the pool is empty. Each iteration rebuilds the equality
/// graph and fires the first applicable rule:
///
///  1. zero-marginal placement: the lexicographically first (agent, item)
///     with c_i(e | X_i) = 0 places e in X_i;
///  2. rotation: the first edge (i, j) on a cycle and item e with
///     c_i(e | X_j) = 0 rotates bundles along the cycle (each u takes X_v
///     for its edge (u, v)) and adds e to i's new bundle;
///  3. batch: for the tail SCC S, if at least |S| items remain, every agent
///     of S (ascending) receives the next unallocated item; else stop.
///
/// Envy-freeness must already hold for `x` on entry and holds on exit.
inline void run_envy_cycle_loop(const Instance& inst, Allocation& x, const SolverOptions& options,
                                SolveReport& report) {
  const int n = inst.agent_count();
  auto cost = [&](int i, ItemSet s) {
    ++report.counters.evaluations;
    return inst.cost(i, s);
  };
  auto emit = [&](TraceEvent ev) {
    if (options.trace) report.trace.push_back(std::move(ev));
  };

  // matrix[i][j] = c_i(X_j), refreshed for the columns of changed bundles.
  std::vector<std::vector<Cost>> matrix(static_cast<std::size_t>(n), std::vector<Cost>(static_cast<std::size_t>(n), 0));
  std::vector<char> dirty(static_cast<std::size_t>(n), 1);
  auto refresh = [&] {
    for (int j = 0; j < n; ++j) {
      if (!options.incremental_envy_graph || dirty[static_cast<std::size_t>(j)] != 0) {
        for (int i = 0; i < n; ++i) matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cost(i, x[j]);
      }
      dirty[static_cast<std::size_t>(j)] = 0;
    }
  };
  auto own = [&](int i) { return matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]; };
  auto touch = [&](int j) { dirty[static_cast<std::size_t>(j)] = 1; };

  const std::uint64_t bound = static_cast<std::uint64_t>(inst.item_count()) + 1;
  std::uint64_t iteration = 0;
  while (!x.unallocated.empty()) {
    ++iteration;
    if (iteration > bound) throw InvariantViolation("envy-cycle loop exceeded m + 1 iterations");
    refresh();
    const EnvyGraph g = envy_graph_from_costs(matrix);
    if (options.check_invariants && g != build_envy_graph(inst, x)) {
      throw InvariantViolation("envy-cycle loop: maintained graph differs from a fresh rebuild");
    }

    // Rule 1.
    bool fired = false;
    for (int i = 0; i < n && !fired; ++i) {
      for (int e : x.unallocated) {
        if (cost(i, x[i].with(e)) == own(i)) {
          x[i].insert(e);
          x.unallocated.erase(e);
          touch(i);
          ++report.counters.zero_marginal_placements;
          emit({.event = "zero_marginal", .phase = "loop", .round = iteration, .agent = i, .item = e});
          fired = true;
          break;
        }
      }
    }

    // Rule 2.
    for (const auto& [i, j] : fired ? std::vector<std::pair<int, int>>{} : g.edges()) {
      const auto cycle = find_cycle_through_edge(g, i, j);
      if (!cycle) continue;
      const Cost base = matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (int e : x.unallocated) {
        if (cost(i, x[j].with(e)) != base) continue;
        const Allocation before = x;
        const std::size_t len = cycle->size();
        for (std::size_t k = 0; k < len; ++k) {
          const int u = (*cycle)[k];
          const int v = (*cycle)[(k + 1) % len];
          x[u] = before[v];
          touch(u);
        }
        x[i].insert(e);
        x.unallocated.erase(e);
        ++report.counters.rotations;
        emit({.event = "rotate", .phase = "loop", .round = iteration, .agent = i, .other = j, .item = e,
              .agents = *cycle});
        fired = true;
        break;
      }
      if (fired) break;
    }

    // Rule 3.
    if (!fired) {
      const std::vector<int> tail = tail_scc(g);
      if (options.check_invariants) {
        for (int i : tail) {
          for (int j : tail) {
            if (i == j || !g.has_edge(i, j)) continue;
            for (int e : x.unallocated) {
              if (inst.cost(i, x[i].with(e)) - inst.cost(i, x[i]) != 1 ||
                  inst.cost(i, x[j].with(e)) - inst.cost(i, x[j]) != 1) {
                throw InvariantViolation("envy-cycle loop: batch precondition fails for edge (" +
                                         std::to_string(i) + "," + std::to_string(j) + ") and item " +
                                         std::to_string(e));
              }
            }
          }
        }
      }
      if (x.unallocated.size() < static_cast<int>(tail.size())) {
        emit({.event = "stop", .phase = "loop", .round = iteration, .agents = tail,
              .items = x.unallocated.to_vector()});
        break;
      }
      std::vector<int> given;
      for (int i : tail) {
        const int e = x.unallocated.lowest();
        x[i].insert(e);
        x.unallocated.erase(e);
        touch(i);
        given.push_back(e);
      }
      ++report.counters.batches;
      emit({.event = "batch", .phase = "loop", .round = iteration, .agents = tail, .items = given});
    }

    if (options.check_invariants && !is_alpha_ef(inst, x)) {
      throw InvariantViolation("envy-cycle loop: allocation not envy-free after iteration " +
                               std::to_string(iteration));
    }
  }
  report.counters.iterations += iteration;
}

/// Envy-free partial allocation for binary-marginal costs leaving at most
/// n - 1 items unallocated.
inline SolveReport solve_general(const Instance& inst, const SolverOptions& options = {}) {
  detail::require_class(inst, FunctionClass::general, "general", options);
  SolveReport report;
  report.algorithm = "general";
  report.allocation = Allocation::empty(inst.agent_count(), inst.items());
  run_envy_cycle_loop(inst, report.allocation, options, report);

  const int left = report.allocation.unallocated.size();
  if (left > inst.agent_count() - 1) {
    throw InvariantViolation("general: " + std::to_string(left) + " items left unallocated");
  }
  report.confirmation = is_alpha_ef(inst, report.allocation);
  if (!report.confirmation) throw InvariantViolation("general: output is not envy-free");
  report.guarantee = Guarantee::partial_ef;
  return report;
}

}  // namespace chorefair
