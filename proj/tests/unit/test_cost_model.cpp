#include <gtest/gtest.h>

#include "chorefair.hpp"
#include "support/oracles.hpp"

using namespace chorefair;

TEST(ItemSet, BasicOperations) {
  ItemSet s{0, 2, 5};
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(1));
  EXPECT_FALSE(s.contains(-1));
  EXPECT_EQ(s.lowest(), 0);
  EXPECT_EQ(s.to_string(), "{0,2,5}");
  EXPECT_EQ((s - ItemSet{0}).lowest(), 2);
  EXPECT_EQ(ItemSet{}.lowest(), -1);
  EXPECT_EQ(ItemSet::full(3), (ItemSet{0, 1, 2}));
  EXPECT_EQ(ItemSet::full(64).size(), 64);
  EXPECT_TRUE((ItemSet{2}).is_subset_of(s));
  EXPECT_EQ(s.to_vector(), (std::vector<int>{0, 2, 5}));
  EXPECT_THROW(s.insert(64), InvalidInput);
  EXPECT_THROW(s.insert(-1), InvalidInput);
}

TEST(Evaluate, SpecExamples) {
  const auto cap5 = CostFunction::cardinality(8, 5);
  EXPECT_EQ(cap5.evaluate(ItemSet{0, 1, 2, 3, 4, 5, 6}), 5);
  EXPECT_EQ(cap5.evaluate(ItemSet{}), 0);
  const auto sub4 = builtin("appendixA-submodular-4").agent(0);
  EXPECT_EQ(sub4.evaluate(ItemSet{0, 1, 2}), 2);
  EXPECT_EQ(sub4.evaluate(ItemSet{0, 1, 2, 3}), 3);
  EXPECT_EQ(sub4.evaluate(ItemSet{}), 0);
}

TEST(Evaluate, EveryKindAgreesWithItsFormula) {
  const auto add = CostFunction::additive({1, 0, 1, 1});
  const auto capped = CostFunction::capped_additive({1, 0, 1, 1}, 2);
  const auto pm = CostFunction::partition_matroid(4, {ItemSet{0, 1}, ItemSet{2, 3}}, {1, 2});
  const auto thr = CostFunction::threshold(4, 2);
  for (ItemSet s : oracle::all_subsets(ItemSet::full(4))) {
    Cost sum = 0;
    for (int e : s) sum += std::vector<Cost>{1, 0, 1, 1}[static_cast<std::size_t>(e)];
    EXPECT_EQ(add.evaluate(s), sum);
    EXPECT_EQ(capped.evaluate(s), std::min<Cost>(sum, 2));
    EXPECT_EQ(pm.evaluate(s), std::min(1, (s & ItemSet{0, 1}).size()) + std::min(2, (s & ItemSet{2, 3}).size()));
    EXPECT_EQ(thr.evaluate(s), std::max(0, s.size() - 2));
  }
}

TEST(Evaluate, OutOfRangeIsInvalid) {
  const auto add = CostFunction::additive({1, 0});
  EXPECT_THROW((void)add.evaluate(ItemSet{2}), InvalidInput);
}

TEST(Marginal, SpecExamples) {
  EXPECT_EQ(CostFunction::threshold(3, 1).marginal(2, ItemSet{0}), 1);
  const auto add = CostFunction::additive({0, 1, 1});
  for (int e = 0; e < 3; ++e) EXPECT_EQ(add.marginal(e, ItemSet{}), add.evaluate(ItemSet::single(e)));
  EXPECT_EQ(CostFunction::cardinality(8, 5).marginal(7, ItemSet{0, 1, 2, 3, 4}), 0);
  EXPECT_THROW((void)add.marginal(1, ItemSet{1}), InvalidInput);
}

TEST(Factories, RejectInvalidDescriptors) {
  EXPECT_THROW(CostFunction::additive({0, 2}), InvalidInput);
  EXPECT_THROW(CostFunction::additive({-1}), InvalidInput);
  EXPECT_THROW(CostFunction::cardinality(3, -1), InvalidInput);
  EXPECT_THROW(CostFunction::threshold(3, -1), InvalidInput);
  // groups must partition the items
  EXPECT_THROW(CostFunction::partition_matroid(3, {ItemSet{0, 1}}, {1}), InvalidInput);
  EXPECT_THROW(CostFunction::partition_matroid(3, {ItemSet{0, 1}, ItemSet{1, 2}}, {1, 1}), InvalidInput);
  EXPECT_THROW(CostFunction::partition_matroid(2, {ItemSet{0, 1}}, {1, 1}), InvalidInput);
  // table: wrong size, non-zero empty set, non-monotone, non-binary
  EXPECT_THROW(CostFunction::table({0, 1, 1}), InvalidInput);
  EXPECT_THROW(CostFunction::table({1, 1}), InvalidInput);
  EXPECT_THROW(CostFunction::table({0, 1, 1, 0}), InvalidInput);
  EXPECT_THROW(CostFunction::table({0, 2}), InvalidInput);
  EXPECT_NO_THROW(CostFunction::table({0, 2}, TablePolicy::allow_non_binary));
  EXPECT_FALSE(CostFunction::table({0, 2}, TablePolicy::allow_non_binary).binary_marginal());
}

TEST(Residual, CardinalityCapFiveWithFourItemBase) {
  const auto fn = CostFunction::cardinality(8, 5);
  const ItemSet base{0, 1, 2, 3};
  const ResidualCost d(fn, base);
  EXPECT_EQ(d.evaluate(ItemSet{}), 0);
  EXPECT_EQ(d.evaluate(ItemSet{4}), 1);
  EXPECT_EQ(d.evaluate(ItemSet{4, 5}), 1);
  EXPECT_EQ(d.evaluate(ItemSet{4, 5, 6, 7}), 1);
  EXPECT_EQ(d.domain(), (ItemSet{4, 5, 6, 7}));
  EXPECT_THROW((void)d.evaluate(ItemSet{3}), InvalidInput);
}

TEST(Residual, EmptyBaseMatchesFunction) {
  const auto fn = builtin("appendixA-submodular-4").agent(0);
  const ResidualCost d(fn, ItemSet{});
  for (ItemSet s : oracle::all_subsets(ItemSet::full(4))) EXPECT_EQ(d.evaluate(s), fn.evaluate(s));
}

TEST(FunctionClassEnum, Containment) {
  EXPECT_TRUE(within(FunctionClass::additive, FunctionClass::general));
  EXPECT_TRUE(within(FunctionClass::cancelable, FunctionClass::submodular));
  EXPECT_FALSE(within(FunctionClass::submodular, FunctionClass::cancelable));
  EXPECT_EQ(parse_function_class("submodular"), FunctionClass::submodular);
  EXPECT_THROW(parse_function_class("convex"), InvalidInput);
}

TEST(CheckClass, CardinalityCapFive) {
  const auto r = check_class(builtin("appendixA-cap5-function").agent(0));
  EXPECT_TRUE(r.binary_marginal);
  EXPECT_FALSE(r.additive);
  EXPECT_TRUE(r.cancelable);
  EXPECT_TRUE(r.submodular);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.strongest(), FunctionClass::cancelable);
}

TEST(CheckClass, SubmodularNotCancelableWitness) {
  const auto fn = builtin("appendixA-submodular-4").agent(0);
  const auto r = check_class(fn);
  EXPECT_TRUE(r.submodular);
  EXPECT_FALSE(r.cancelable);
  const ClassWitness* w = r.witness(ClassProperty::cancelable);
  ASSERT_NE(w, nullptr);
  // S = {c,d}, T = {b,c}, e = a
  EXPECT_EQ(w->s, (ItemSet{2, 3}));
  EXPECT_EQ(w->t, (ItemSet{1, 2}));
  EXPECT_EQ(w->item, 0);
  EXPECT_GT(fn.evaluate(w->s.with(w->item)), fn.evaluate(w->t.with(w->item)));
  EXPECT_LE(fn.evaluate(w->s), fn.evaluate(w->t));
}

TEST(CheckClass, ZeroFunctionIsInEveryClass) {
  const auto r = check_class(CostFunction::additive(std::vector<Cost>(6, 0)));
  EXPECT_TRUE(r.additive && r.cancelable && r.submodular && r.binary_marginal && r.monotone);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(CheckClass, ThresholdIsOnlyGeneral) {
  const auto r = check_class(CostFunction::threshold(4, 1));
  EXPECT_TRUE(r.binary_marginal);
  EXPECT_FALSE(r.submodular);
  EXPECT_FALSE(r.cancelable);
  EXPECT_EQ(r.strongest(), FunctionClass::general);
  const ClassWitness* w = r.witness(ClassProperty::submodular);
  ASSERT_NE(w, nullptr);
}

TEST(CheckClass, NonBinaryTable) {
  const auto fn = builtin("ternary-no-efxpo").agent(0);
  const auto r = check_class(fn);
  EXPECT_FALSE(r.binary_marginal);
  EXPECT_EQ(r.strongest(), FunctionClass::general);
}

TEST(CheckClass, TooLargeRequiresSampling) {
  const auto fn = CostFunction::cardinality(24, 5);
  EXPECT_THROW((void)check_class(fn), UnsupportedSize);
  const auto r = check_class_sampled(fn, 2000, 3);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_EQ(r.trials, 2000U);
  EXPECT_TRUE(r.cancelable);
  EXPECT_TRUE(r.submodular);
}

TEST(CheckClass, SampledFindsThresholdViolation) {
  const auto r = check_class_sampled(CostFunction::threshold(30, 3), 10000, 1);
  EXPECT_FALSE(r.submodular);
}

TEST(Classify, UsesConstructionOrCheck) {
  EXPECT_EQ(classify(CostFunction::additive({1, 0})), FunctionClass::additive);
  EXPECT_EQ(classify(CostFunction::cardinality(5, 2)), FunctionClass::cancelable);
  EXPECT_EQ(classify(CostFunction::table({0, 1, 1, 2})), FunctionClass::additive);
  EXPECT_EQ(classify(CostFunction::table({0, 1, 1, 1})), FunctionClass::cancelable);
  EXPECT_EQ(classify(builtin("appendixA-submodular-4").agent(0)), FunctionClass::submodular);
}

TEST(Instance, Validation) {
  EXPECT_THROW(Instance(3, {}, FunctionClass::general), InvalidInput);
  EXPECT_THROW(Instance(3, {CostFunction::additive({1, 0})}, FunctionClass::additive), InvalidInput);
  EXPECT_THROW(Instance(3, {CostFunction::threshold(3, 1)}, FunctionClass::submodular), InvalidInput);
  EXPECT_THROW(Instance(1, {CostFunction::table({0, 2}, TablePolicy::allow_non_binary)}, FunctionClass::submodular),
               InvalidInput);
  EXPECT_NO_THROW(Instance(3, {CostFunction::threshold(3, 1)}, FunctionClass::general));
  const Instance empty(0, {CostFunction::additive({})}, FunctionClass::additive);
  EXPECT_EQ(empty.item_count(), 0);
  EXPECT_EQ(empty.cost(0, ItemSet{}), 0);
}
