#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chorefair/cost_function.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/function_class.hpp"

namespace chorefair {

struct InstanceMetadata {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::string family;
  std::vector<std::string> agent_labels;
  std::vector<std::string> item_labels;

  friend bool operator==(const InstanceMetadata&, const InstanceMetadata&) = default;
};

/// n agents, m items and one cost function per agent, together with the
/// class the author declares the functions to belong to.
class Instance {
 public:
  /// Validates: n >= 1, every agent defined on exactly m items, and every
  /// agent's known class within `declared`. Non-binary tables are only
  /// accepted when `declared` is general.
  Instance(int m, std::vector<CostFunction> agents, FunctionClass declared,
           InstanceMetadata metadata = {})
      : m_(m), agents_(std::move(agents)), declared_(declared), metadata_(std::move(metadata)) {
    if (m_ < 0 || m_ > kMaxItems) {
      throw InvalidInput("item count " + std::to_string(m_) + " outside [0, " +
                         std::to_string(kMaxItems) + "]");
    }
    if (agents_.empty()) throw InvalidInput("an instance needs at least one agent");
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      const CostFunction& fn = agents_[i];
      const std::string who = "agent " + std::to_string(i);
      if (fn.item_count() != m_) {
        throw InvalidInput(who + ": cost function defined on " + std::to_string(fn.item_count()) +
                           " items, instance has " + std::to_string(m_));
      }
      if (!fn.binary_marginal() && declared_ != FunctionClass::general) {
        throw InvalidInput(who + ": non-binary marginals require declared_class general");
      }
      if (declared_ != FunctionClass::general) {
        const FunctionClass known = classify(fn);
        if (!within(known, declared_)) {
          throw InvalidInput(who + ": " + std::string(fn.kind()) + " function is " +
                             std::string(to_string(known)) + ", not " +
                             std::string(to_string(declared_)));
        }
      }
    }
  }

  int agent_count() const { return static_cast<int>(agents_.size()); }
  int item_count() const { return m_; }
  ItemSet items() const { return ItemSet::full(m_); }
  const CostFunction& agent(int i) const { return agents_.at(static_cast<std::size_t>(i)); }
  std::span<const CostFunction> agents() const { return agents_; }
  FunctionClass declared_class() const { return declared_; }
  const InstanceMetadata& metadata() const { return metadata_; }

  /// c_i(S).
  Cost cost(int i, ItemSet s) const { return agent(i).evaluate(s); }

  bool all_binary_marginal() const {
    for (const auto& fn : agents_) {
      if (!fn.binary_marginal()) return false;
    }
    return true;
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  int m_;
  std::vector<CostFunction> agents_;
  FunctionClass declared_;
  InstanceMetadata metadata_;
};

}  // namespace chorefair
