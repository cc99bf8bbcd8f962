#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chorefair/allocation.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/fairness.hpp"
#include "chorefair/function_class.hpp"
#include "chorefair/instance.hpp"

namespace chorefair {

/// What a solver promises about its output. Confirmed by a checker before
/// the report is returned.
enum class Guarantee { efx_and_po, efx, partial_ef, two_ef, two_efx };

inline std::string_view to_string(Guarantee g) {
  switch (g) {
    case Guarantee::efx_and_po: return "EFX_AND_PO";
    case Guarantee::efx: return "EFX";
    case Guarantee::partial_ef: return "PARTIAL_EF";
    case Guarantee::two_ef: return "TWO_EF";
    case Guarantee::two_efx: return "TWO_EFX";
  }
  return "";
}

/// One solver step. Unused fields stay empty and are omitted from JSON.
struct TraceEvent {
  std::string event;
  std::string phase;
  std::uint64_t round = 0;
  std::optional<int> agent;
  std::optional<int> other;
  std::optional<int> item;
  std::vector<int> agents;
  std::vector<int> items;
};

struct SolveCounters {
  /// Cost-function evaluations made by the algorithm itself (invariant
  /// checks excluded).
  std::uint64_t evaluations = 0;
  std::uint64_t iterations = 0;
  std::uint64_t phase1_rounds = 0;
  std::uint64_t phase2_iterations = 0;
  std::uint64_t reassignments = 0;
  std::uint64_t adds = 0;
  std::uint64_t merges = 0;
  std::uint64_t takes = 0;
  std::uint64_t swaps = 0;
  std::uint64_t zero_marginal_placements = 0;
  std::uint64_t rotations = 0;
  std::uint64_t batches = 0;
  std::uint64_t leftovers = 0;
};

struct SolveReport {
  std::string algorithm;
  Allocation allocation;
  Guarantee guarantee = Guarantee::efx;
  /// Which branch of the submodular dispatcher ran (1 or 2).
  std::optional<int> submodular_case;
  /// Common bundle size after the cancelable solver's first phase.
  std::optional<int> phase1_width;
  SolveCounters counters;
  std::vector<TraceEvent> trace;
  /// Checker verdict on the guarantee, computed before returning.
  CheckResult confirmation;

  bool complete() const { return allocation.complete(); }
};

struct SolverOptions {
  /// Assert per-round invariants (EFX/EF of intermediate states, bundle
  /// balance, rule preconditions). Off only for timing runs.
  bool check_invariants = true;
  /// Record trace events.
  bool trace = false;
  /// Exhaustively verify every agent's class when m is at most
  /// `class_verify_limit`.
  bool verify_class = true;
  int class_verify_limit = 12;
  /// Envy-cycle solver: update the cost matrix only for changed bundles
  /// instead of rebuilding it every iteration.
  bool incremental_envy_graph = false;
};

namespace detail {

inline bool has_property(const FunctionClassReport& r, FunctionClass required) {
  if (!r.binary_marginal || !r.monotone) return false;
  switch (required) {
    case FunctionClass::additive: return r.additive;
    case FunctionClass::cancelable: return r.cancelable;
    case FunctionClass::submodular: return r.submodular;
    case FunctionClass::general: return true;
  }
  return false;
}

/// Rejects instances outside `required`: by declaration, by binary
/// marginals, and by an exhaustive per-agent check on small instances.
inline void require_class(const Instance& inst, FunctionClass required, std::string_view solver,
                          const SolverOptions& options) {
  const std::string who(solver);
  if (!within(inst.declared_class(), required)) {
    throw WrongClass(who + " solver needs instances of class " + std::string(to_string(required)) +
                     " or narrower, declared class is " + std::string(to_string(inst.declared_class())));
  }
  for (int i = 0; i < inst.agent_count(); ++i) {
    if (!inst.agent(i).binary_marginal()) {
      throw WrongClass(who + " solver: agent " + std::to_string(i) + " has non-binary marginals");
    }
  }
  if (!options.verify_class || inst.item_count() > options.class_verify_limit) return;
  for (int i = 0; i < inst.agent_count(); ++i) {
    if (inst.agent(i).class_by_construction() &&
        within(*inst.agent(i).class_by_construction(), required)) {
      continue;
    }
    if (!has_property(check_class(inst.agent(i)), required)) {
      throw WrongClass(who + " solver: agent " + std::to_string(i) + " is not " +
                       std::string(to_string(required)));
    }
  }
}

inline void invariant(bool condition, const std::string& message) {
  if (!condition) throw InvariantViolation(message);
}

}  // namespace detail

}  // namespace chorefair
