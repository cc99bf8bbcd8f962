#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <string>
#include <vector>

#include "chorefair/errors.hpp"

namespace chorefair {

/// A subset of the items {0, ..., 63}, stored as a bitmask. Item i is bit i.
class ItemSet {
 public:
  static constexpr int kCapacity = 64;

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = int;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}

    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr ItemSet() = default;
  constexpr explicit ItemSet(std::uint64_t bits) : bits_(bits) {}
  ItemSet(std::initializer_list<int> items) {
    for (int e : items) insert(e);
  }

  template <class Range>
  static ItemSet of(const Range& items) {
    ItemSet s;
    for (int e : items) s.insert(e);
    return s;
  }

  /// {0, ..., m-1}.
  static constexpr ItemSet full(int m) {
    return ItemSet(m >= kCapacity ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
  }
  static ItemSet single(int e) { return ItemSet{}.with(e); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }

  constexpr bool contains(int e) const {
    return e >= 0 && e < kCapacity && ((bits_ >> e) & 1U) != 0;
  }
  void insert(int e) { bits_ |= bit(e); }
  void erase(int e) { bits_ &= ~bit(e); }
  ItemSet with(int e) const { return ItemSet(bits_ | bit(e)); }
  ItemSet without(int e) const { return ItemSet(bits_ & ~bit(e)); }

  /// Lowest item, or -1 when empty.
  constexpr int lowest() const { return bits_ == 0 ? -1 : std::countr_zero(bits_); }

  constexpr bool is_subset_of(ItemSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(ItemSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> to_vector() const { return {begin(), end()}; }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int e : *this) {
      if (!first) out += ",";
      out += std::to_string(e);
      first = false;
    }
    return out + "}";
  }

  friend constexpr ItemSet operator|(ItemSet a, ItemSet b) { return ItemSet(a.bits_ | b.bits_); }
  friend constexpr ItemSet operator&(ItemSet a, ItemSet b) { return ItemSet(a.bits_ & b.bits_); }
  friend constexpr ItemSet operator-(ItemSet a, ItemSet b) { return ItemSet(a.bits_ & ~b.bits_); }
  ItemSet& operator|=(ItemSet o) {
    bits_ |= o.bits_;
    return *this;
  }
  ItemSet& operator&=(ItemSet o) {
    bits_ &= o.bits_;
    return *this;
  }
  ItemSet& operator-=(ItemSet o) {
    bits_ &= ~o.bits_;
    return *this;
  }
  friend constexpr bool operator==(ItemSet, ItemSet) = default;
  friend constexpr auto operator<=>(ItemSet, ItemSet) = default;

 private:
  static std::uint64_t bit(int e) {
    if (e < 0 || e >= kCapacity) {
      throw InvalidInput("item index " + std::to_string(e) + " outside [0, 64)");
    }
    return std::uint64_t{1} << e;
  }

  std::uint64_t bits_ = 0;
};

}  // namespace chorefair
