#pragma once

#include <span>
#include <string>
#include <vector>

#include "chorefair/errors.hpp"
#include "chorefair/item_set.hpp"

namespace chorefair {

/// Bundles for n agents plus the pool of items nobody holds yet.
struct Allocation {
  std::vector<ItemSet> bundles;
  ItemSet unallocated;

  /// n empty bundles, everything in `pool` unallocated.
  static Allocation empty(int n, ItemSet pool = {}) {
    return {std::vector<ItemSet>(static_cast<std::size_t>(n)), pool};
  }

  /// owner[e] is the agent receiving item e.
  static Allocation from_owners(int n, std::span<const int> owner) {
    Allocation x = empty(n);
    for (std::size_t e = 0; e < owner.size(); ++e) {
      if (owner[e] < 0 || owner[e] >= n) throw InvalidInput("owner index out of range");
      x.bundles[static_cast<std::size_t>(owner[e])].insert(static_cast<int>(e));
    }
    return x;
  }

  int agent_count() const { return static_cast<int>(bundles.size()); }
  bool complete() const { return unallocated.empty(); }

  ItemSet allocated() const {
    ItemSet all;
    for (ItemSet b : bundles) all |= b;
    return all;
  }

  ItemSet& operator[](int i) { return bundles.at(static_cast<std::size_t>(i)); }
  ItemSet operator[](int i) const { return bundles.at(static_cast<std::size_t>(i)); }

  /// Agent holding item e, or -1 when it is unallocated.
  int owner_of(int e) const {
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      if (bundles[i].contains(e)) return static_cast<int>(i);
    }
    return -1;
  }

  /// Throws InvalidInput unless this is a partition of {0..m-1} into n
  /// bundles and the pool.
  void validate(int n, int m) const {
    if (agent_count() != n) {
      throw InvalidInput("allocation has " + std::to_string(agent_count()) + " bundles, expected " +
                         std::to_string(n));
    }
    ItemSet seen = unallocated;
    for (std::size_t i = 0; i < bundles.size(); ++i) {
      if (bundles[i].intersects(seen)) {
        throw InvalidInput("bundle " + std::to_string(i) + " overlaps another bundle or the pool");
      }
      seen |= bundles[i];
    }
    if (seen != ItemSet::full(m)) {
      throw InvalidInput("allocation does not partition items 0.." + std::to_string(m - 1) +
                         " (covers " + seen.to_string() + ")");
    }
  }

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

}  // namespace chorefair
