#include <gtest/gtest.h>

#include "chorefair.hpp"
#include "support/oracles.hpp"

using namespace chorefair;

namespace {

Allocation alloc(std::vector<ItemSet> bundles, ItemSet unallocated = {}) { return Allocation{std::move(bundles), unallocated}; }

Instance additive_113() {
  return Instance(3, {CostFunction::additive({1, 1, 0}), CostFunction::additive({1, 0, 1})}, FunctionClass::additive);
}

Instance additive_1100() {
  return Instance(4, {CostFunction::additive({1, 1, 0, 0}), CostFunction::additive({1, 1, 0, 0})},
                  FunctionClass::additive);
}

}  // namespace

// ---------------------------------------------------------------------------
// additive

TEST(PartitionItems, SpecExamples) {
  const auto p = partition_items(additive_113());
  EXPECT_EQ(p.zero, (ItemSet{1, 2}));
  EXPECT_EQ(p.plus, (ItemSet{0}));
  const Instance zeros(3, std::vector<CostFunction>(2, CostFunction::additive({0, 0, 0})), FunctionClass::additive);
  EXPECT_EQ(partition_items(zeros).zero, ItemSet::full(3));
  const Instance ones(3, std::vector<CostFunction>(2, CostFunction::additive({1, 1, 1})), FunctionClass::additive);
  EXPECT_EQ(partition_items(ones).plus, ItemSet::full(3));
}

TEST(SolveAdditive, HandTrace) {
  const auto inst = additive_113();
  SolverOptions o;
  o.trace = true;
  const auto r = solve_additive(inst, o);
  EXPECT_EQ(r.allocation, alloc({ItemSet{0, 2}, ItemSet{1}}));
  EXPECT_EQ(r.guarantee, Guarantee::efx_and_po);
  EXPECT_EQ(social_cost(inst, r.allocation), 1);
  EXPECT_TRUE(oracle::alpha_efx(inst, r.allocation.bundles));
  EXPECT_TRUE(oracle::pareto_optimal(inst, r.allocation.bundles));
  ASSERT_GE(r.trace.size(), 3U);
  EXPECT_EQ(r.trace[0].event, "place_free");
}

TEST(SolveAdditive, NoPlusItems) {
  const Instance zeros(5, std::vector<CostFunction>(3, CostFunction::additive({0, 0, 0, 0, 0})), FunctionClass::additive);
  const auto r = solve_additive(zeros);
  EXPECT_TRUE(r.complete());
  EXPECT_EQ(social_cost(zeros, r.allocation), 0);
}

TEST(SolveAdditive, SeedFortyTwoSnapshot) {
  const auto inst = generate(Family::binary_additive, 3, 9, 42);
  const auto r = solve_additive(inst);
  EXPECT_EQ(r.allocation, alloc({ItemSet{1, 4, 7}, ItemSet{0, 2, 3, 6, 8}, ItemSet{5}}));
  EXPECT_TRUE(oracle::alpha_efx(inst, r.allocation.bundles));
  EXPECT_TRUE(oracle::pareto_optimal(inst, r.allocation.bundles));
}

TEST(SolveAdditive, RejectsOtherClasses) {
  EXPECT_THROW(solve_additive(builtin("ternary-no-efxpo")), WrongClass);
  EXPECT_THROW(solve_additive(builtin("cancelable-cap5-n2")), WrongClass);
  // declared too broadly even though the function is additive
  const Instance broad(2, {CostFunction::additive({1, 0})}, FunctionClass::cancelable);
  EXPECT_THROW(solve_additive(broad), WrongClass);
}

TEST(SolveAdditive, DegenerateSizes) {
  const Instance none(0, std::vector<CostFunction>(3, CostFunction::additive({})), FunctionClass::additive);
  EXPECT_EQ(solve_additive(none).allocation, alloc({ItemSet{}, ItemSet{}, ItemSet{}}));
  const Instance one(3, {CostFunction::additive({1, 0, 1})}, FunctionClass::additive);
  EXPECT_EQ(solve_additive(one).allocation, alloc({ItemSet::full(3)}));
}

// ---------------------------------------------------------------------------
// cancelable

TEST(Phase1, SpecExamples) {
  auto p = phase1(additive_1100());
  EXPECT_EQ(p.width, 1);
  EXPECT_EQ(p.base, (std::vector<ItemSet>{ItemSet{0}, ItemSet{1}}));
  EXPECT_EQ(p.remaining, (ItemSet{2, 3}));

  const Instance zeros(3, std::vector<CostFunction>(2, CostFunction::additive({0, 0, 0})), FunctionClass::additive);
  p = phase1(zeros);
  EXPECT_EQ(p.width, 0);
  EXPECT_EQ(p.base, (std::vector<ItemSet>{ItemSet{}, ItemSet{}}));

  p = phase1(builtin("cancelable-cap5-n2"));
  EXPECT_EQ(p.width, 5);
  EXPECT_TRUE(p.remaining.empty());
}

TEST(Phase1, NonCancelableInputTripsTheBalanceAssertion) {
  // Agent 0 sees {1,3} as one group of capacity 1; after two rounds it
  // holds {0,2} and values agent 1's {1,3} at 1 instead of 2.
  const Instance inst(4,
                      {CostFunction::partition_matroid(4, {ItemSet{1, 3}, ItemSet{2}, ItemSet{0}}, {1, 1, 1}),
                       CostFunction::cardinality(4, 3)},
                      FunctionClass::submodular);
  EXPECT_THROW(phase1(inst), InvariantViolation);
  EXPECT_THROW(solve_cancelable(inst), WrongClass);
}

TEST(Phase2, SpecExamples) {
  const auto inst = additive_1100();
  const auto p = phase1(inst);
  std::vector<ResidualCost> d;
  for (int i = 0; i < 2; ++i) d.emplace_back(inst.agent(i), p.base[static_cast<std::size_t>(i)]);
  EXPECT_EQ(phase2(d, p.remaining, 4), (std::vector<ItemSet>{ItemSet{2, 3}, ItemSet{}}));
  EXPECT_EQ(phase2(d, ItemSet{}, 4), (std::vector<ItemSet>{ItemSet{}, ItemSet{}}));
}

TEST(SolveCancelable, SpecExamples) {
  const auto inst = additive_1100();
  const auto r = solve_cancelable(inst);
  EXPECT_EQ(r.allocation, alloc({ItemSet{0, 2, 3}, ItemSet{1}}));
  EXPECT_TRUE(oracle::alpha_efx(inst, r.allocation.bundles));

  const auto cap5 = builtin("cancelable-cap5-n2");
  const auto c = solve_cancelable(cap5);
  EXPECT_EQ(c.allocation[0].size(), 5);
  EXPECT_EQ(c.allocation[1].size(), 5);
  EXPECT_TRUE(oracle::alpha_efx(cap5, c.allocation.bundles));
  EXPECT_FALSE(is_po_bruteforce(cap5, c.allocation).pareto_optimal);
  EXPECT_FALSE(oracle::pareto_optimal(cap5, c.allocation.bundles));
}

TEST(SolveCancelable, FrozenSwapInstance) {
  const Instance inst(4,
                      {CostFunction::capped_additive({0, 1, 1, 0}, 4), CostFunction::capped_additive({1, 1, 1, 1}, 2),
                       CostFunction::capped_additive({1, 0, 1, 0}, 1)},
                      FunctionClass::cancelable);
  SolverOptions o;
  o.trace = true;
  const auto r = solve_cancelable(inst, o);
  std::vector<std::string> events;
  for (const auto& ev : r.trace) events.push_back(ev.event);
  EXPECT_EQ(events, (std::vector<std::string>{"phase1_bundle", "phase1_bundle", "phase1_bundle", "seed", "merge",
                                               "take", "swap", "add"}));
  EXPECT_EQ(r.counters.swaps, 1U);
  EXPECT_EQ(r.allocation, alloc({ItemSet{0, 3}, ItemSet{1}, ItemSet{2}}));
  EXPECT_TRUE(oracle::alpha_efx(inst, r.allocation.bundles));
  EXPECT_LE(r.counters.phase2_iterations, 8U);
}

TEST(SolveCancelable, RejectsSubmodularInstances) {
  EXPECT_THROW(solve_cancelable(builtin("appendixA-submodular-4")), WrongClass);
  // declared cancelable but a table fails the exhaustive check
  const auto sub = builtin("appendixA-submodular-4").agent(0);
  EXPECT_THROW(Instance(4, {sub}, FunctionClass::cancelable), InvalidInput);
}

TEST(SolveCancelable, RandomSweepAgainstNaiveChecker) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const int m = 1 + static_cast<int>(seed % 8);
    const auto inst = generate(seed % 2 ? Family::capped_additive : Family::cardinality, n, m, seed);
    const auto r = solve_cancelable(inst);
    ASSERT_TRUE(r.complete());
    ASSERT_TRUE(oracle::alpha_efx(inst, r.allocation.bundles)) << serialize_instance(inst);
    ASSERT_LE(r.counters.phase2_iterations, 2U * static_cast<std::uint64_t>(m));
  }
}

// ---------------------------------------------------------------------------
// general

TEST(SolveGeneral, ThresholdHandTrace) {
  const Instance inst(3, std::vector<CostFunction>(2, CostFunction::threshold(3, 1)), FunctionClass::general);
  SolverOptions o;
  o.trace = true;
  const auto r = solve_general(inst, o);
  EXPECT_EQ(r.allocation, alloc({ItemSet{0}, ItemSet{1}}, ItemSet{2}));
  EXPECT_EQ(r.guarantee, Guarantee::partial_ef);
  EXPECT_EQ(r.counters.zero_marginal_placements, 2U);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(r.trace.back().event, "stop");
  EXPECT_TRUE(oracle::alpha_ef(inst, r.allocation.bundles));
}

TEST(SolveGeneral, AllZeroCosts) {
  const Instance inst(5, std::vector<CostFunction>(3, CostFunction::additive({0, 0, 0, 0, 0})), FunctionClass::additive);
  const auto r = solve_general(inst);
  EXPECT_TRUE(r.complete());
  EXPECT_EQ(r.counters.zero_marginal_placements, 5U);
  EXPECT_EQ(social_cost(inst, r.allocation), 0);
}

TEST(SolveGeneral, RejectsNonBinary) { EXPECT_THROW(solve_general(builtin("ternary-no-efxpo")), WrongClass); }

TEST(SolveGeneral, IncrementalGraphMatchesRebuild) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = generate(seed % 2 ? Family::table : Family::threshold, 3, 1 + static_cast<int>(seed % 10), seed);
    SolverOptions full, incremental;
    incremental.incremental_envy_graph = true;
    EXPECT_EQ(solve_general(inst, full).allocation, solve_general(inst, incremental).allocation);
  }
}

TEST(SolveGeneral, MixedSweep) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SplitMix64 rng(seed);
    std::vector<CostFunction> agents;
    for (int i = 0; i < 3; ++i) {
      auto sub = rng.split();
      agents.push_back(random_cost_function(rng.bernoulli(0.5) ? Family::threshold : Family::table, 10, sub));
    }
    const Instance inst(10, std::move(agents), FunctionClass::general);
    const auto r = solve_general(inst);
    ASSERT_TRUE(oracle::alpha_ef(inst, r.allocation.bundles)) << serialize_instance(inst);
    ASSERT_LE(r.allocation.unallocated.size(), 2);
  }
}

// ---------------------------------------------------------------------------
// submodular

TEST(ComputeM1, SpecExamples) {
  EXPECT_EQ(compute_m1(builtin("cancelable-cap5-n2")), ItemSet::full(10));
  const Instance zeros(3, std::vector<CostFunction>(2, CostFunction::additive({0, 0, 0})), FunctionClass::additive);
  EXPECT_TRUE(compute_m1(zeros).empty());
  EXPECT_EQ(compute_m1(additive_113()), (ItemSet{0}));
}

TEST(SolveSubmodular, CaseTwoHandTrace) {
  const Instance inst(5, std::vector<CostFunction>(2, CostFunction::cardinality(5, 5)), FunctionClass::cancelable);
  SolverOptions o;
  o.trace = true;
  const auto r = solve_submodular(inst, o);
  EXPECT_EQ(r.submodular_case, 2);
  EXPECT_EQ(r.allocation, alloc({ItemSet{0, 2, 4}, ItemSet{1, 3}}));
  EXPECT_EQ(r.guarantee, Guarantee::two_ef);
  EXPECT_EQ(inst.cost(0, r.allocation[0]), 3);
  EXPECT_EQ(inst.cost(1, r.allocation[1]), 2);
  EXPECT_TRUE(oracle::alpha_ef(inst, r.allocation.bundles, 2, 1));
  EXPECT_FALSE(oracle::alpha_ef(inst, r.allocation.bundles));
  std::vector<std::string> events;
  for (const auto& ev : r.trace) events.push_back(ev.event);
  EXPECT_EQ(events, (std::vector<std::string>{"seed", "seed", "batch", "stop", "leftover"}));
}

TEST(SolveSubmodular, CaseOneIsEfx) {
  const auto sub4 = builtin("appendixA-submodular-4");
  EXPECT_EQ(solve_submodular(sub4).submodular_case, 2);
  const Instance inst(4, {sub4.agent(0), CostFunction::additive({0, 0, 0, 0})}, FunctionClass::submodular);
  const auto r = solve_submodular(inst);
  EXPECT_EQ(r.submodular_case, 1);
  EXPECT_TRUE(r.complete());
  EXPECT_TRUE(oracle::alpha_efx(inst, r.allocation.bundles));
  const Instance zeros(4, std::vector<CostFunction>(3, CostFunction::additive({0, 1, 0, 0})), FunctionClass::additive);
  const auto z = solve_submodular(zeros);
  EXPECT_EQ(z.submodular_case, 1);
  EXPECT_EQ(z.guarantee, Guarantee::efx);
  EXPECT_TRUE(oracle::alpha_efx(zeros, z.allocation.bundles));
}

TEST(SolveSubmodular, RejectsThreshold) {
  const Instance inst(3, std::vector<CostFunction>(2, CostFunction::threshold(3, 1)), FunctionClass::general);
  EXPECT_THROW(solve_submodular(inst), WrongClass);
}

TEST(SolveSubmodular, MatroidSweep) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int n = 2 + static_cast<int>(seed % 3);
    const int m = 1 + static_cast<int>(seed % 9);
    const auto inst = generate(Family::partition_matroid, n, m, seed);
    const auto r = solve_submodular(inst);
    ASSERT_TRUE(r.complete());
    ASSERT_TRUE(oracle::alpha_efx(inst, r.allocation.bundles, 2, 1)) << serialize_instance(inst);
    if (r.submodular_case == 1) ASSERT_TRUE(oracle::alpha_efx(inst, r.allocation.bundles));
    else ASSERT_TRUE(oracle::alpha_ef(inst, r.allocation.bundles, 2, 1));
  }
}

TEST(SolverOptions, InvariantChecksDoNotChangeOutput) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = generate(Family::partition_matroid, 3, 8, seed);
    SolverOptions fast;
    fast.check_invariants = false;
    EXPECT_EQ(solve_submodular(inst).allocation, solve_submodular(inst, fast).allocation);
  }
}
