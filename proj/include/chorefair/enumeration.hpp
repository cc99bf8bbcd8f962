#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "chorefair/allocation.hpp"
#include "chorefair/errors.hpp"
#include "chorefair/instance.hpp"

namespace chorefair {

inline constexpr std::uint64_t kDefaultEnumerationLimit = 10'000'000;
inline constexpr std::uint64_t kHardEnumerationLimit = 100'000'000;

/// n^m, or nullopt when it does not fit in 64 bits.
inline std::optional<std::uint64_t> allocation_count(int n, int m) {
  std::uint64_t total = 1;
  const auto base = static_cast<std::uint64_t>(n);
  for (int k = 0; k < m; ++k) {
    if (base != 0 && total > std::numeric_limits<std::uint64_t>::max() / base) return std::nullopt;
    total *= base;
  }
  return total;
}

/// Returns n^m, or throws UnsupportedSize when it exceeds `limit`.
inline std::uint64_t require_enumerable(int n, int m, std::uint64_t limit) {
  if (limit > kHardEnumerationLimit) {
    throw InvalidInput("enumeration limit " + std::to_string(limit) + " above the hard cap " +
                       std::to_string(kHardEnumerationLimit));
  }
  const auto count = allocation_count(n, m);
  if (!count || *count > limit) {
    throw UnsupportedSize(std::to_string(n) + "^" + std::to_string(m) +
                          " allocations exceed the enumeration limit " + std::to_string(limit));
  }
  return *count;
}

namespace detail {

template <class Visitor>
bool visit_one(Visitor& visit, const Allocation& x) {
  if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const Allocation&>, bool>) {
    return visit(x);
  } else {
    visit(x);
    return true;
  }
}

}  // namespace detail

/// Visits the complete allocations whose lexicographic rank lies in
/// [begin, end). Rank orders owner vectors (owner of item 0 most
/// significant). A visitor returning `false` stops the walk; the function
/// then returns false.
template <class Visitor>
bool enumerate_range(int n, int m, std::uint64_t begin, std::uint64_t end, Visitor&& visit) {
  if (begin >= end) return true;
  std::vector<int> owner(static_cast<std::size_t>(m));
  std::uint64_t rest = begin;
  for (int k = m - 1; k >= 0; --k) {
    owner[static_cast<std::size_t>(k)] = static_cast<int>(rest % static_cast<std::uint64_t>(n));
    rest /= static_cast<std::uint64_t>(n);
  }
  Allocation x = Allocation::from_owners(n, owner);
  for (std::uint64_t rank = begin; rank < end; ++rank) {
    if (!detail::visit_one(visit, x)) return false;
    for (int k = m - 1; k >= 0; --k) {
      int& o = owner[static_cast<std::size_t>(k)];
      x.bundles[static_cast<std::size_t>(o)].erase(k);
      if (++o < n) {
        x.bundles[static_cast<std::size_t>(o)].insert(k);
        break;
      }
      o = 0;
      x.bundles[0].insert(k);
    }
  }
  return true;
}

/// Visits every complete allocation of `inst` exactly once, in
/// lexicographic order of the item-to-agent vector.
template <class Visitor>
void enumerate_allocations(const Instance& inst, Visitor&& visit,
                           std::uint64_t limit = kDefaultEnumerationLimit) {
  const std::uint64_t total = require_enumerable(inst.agent_count(), inst.item_count(), limit);
  enumerate_range(inst.agent_count(), inst.item_count(), 0, total, visit);
}

/// Splits [0, total) into `jobs` contiguous rank ranges and runs
/// `work(chunk, begin, end)` for each on its own thread. Chunk c covers lower
/// ranks than chunk c+1, so merging per-chunk results in chunk order
/// reproduces the sequential order.
template <class Work>
void for_each_chunk(std::uint64_t total, unsigned jobs, Work&& work) {
  jobs = std::max(1U, jobs);
  if (total < jobs) jobs = static_cast<unsigned>(std::max<std::uint64_t>(1, total));
  const std::uint64_t step = total / jobs;
  auto bounds = [&](unsigned c) {
    const std::uint64_t b = step * c;
    const std::uint64_t e = (c + 1 == jobs) ? total : step * (c + 1);
    return std::pair{b, e};
  };
  if (jobs == 1) {
    work(0U, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(jobs);
  threads.reserve(jobs);
  for (unsigned c = 0; c < jobs; ++c) {
    auto [b, e] = bounds(c);
    threads.emplace_back([&work, &errors, c, b = b, e = e] {
      try {
        work(c, b, e);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

}  // namespace chorefair
