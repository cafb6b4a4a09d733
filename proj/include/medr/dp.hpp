#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace medr {

struct DpItem {
  std::int64_t size = 0;
  std::int64_t cost = 0;
};

// Max-size-at-exact-cost table: cell (i, c) holds the largest total size of
// any subset of items 1..i whose costs sum to exactly c, or kNoSet when no
// such subset exists. The empty set makes (i, 0) = 0 everywhere, which is
// why "no subset" needs a sentinel distinct from 0.
struct DpTable {
  static constexpr std::int64_t kNoSet = -1;

  std::vector<DpItem> items;
  std::int64_t cost_bound = 0;

  std::int64_t at(std::size_t i, std::int64_t c) const {
    return max_size_[i * stride() + static_cast<std::size_t>(c)];
  }
  bool took(std::size_t i, std::int64_t c) const {
    return take_[i * stride() + static_cast<std::size_t>(c)] != 0;
  }

  // Item indices (into `items`) of the witness subset behind at(n, cost).
  // On size ties the table prefers the skip branch, so the witness drops
  // the highest-indexed items first.
  std::vector<std::size_t> reconstruct(std::int64_t cost) const;

  std::size_t stride() const { return static_cast<std::size_t>(cost_bound) + 1; }

  std::vector<std::int64_t> max_size_;
  std::vector<std::uint8_t> take_;
};

// Fills the table row by row. Row i depends only on row i-1, so cells within
// a row update in parallel; large rows run under OpenMP, small ones stay
// serial to dodge fork overhead.
DpTable build_table(std::span<const DpItem> items, std::int64_t cost_bound);

// Single-threaded reference used by the tests and the benchmark. Produces
// bit-identical tables to build_table.
DpTable build_table_serial(std::span<const DpItem> items, std::int64_t cost_bound);

}  // namespace medr
