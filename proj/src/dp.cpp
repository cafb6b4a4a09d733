#include "medr/dp.hpp"

#include <algorithm>
#include <stdexcept>

#include "medr/errors.hpp"

namespace medr {

namespace {

// ~2e8 cells (~1.8 GiB across both arrays) is where we refuse rather than
// thrash. The exact solver's horizon is the sum of declared costs, so only
// adversarial inputs get anywhere near this.
constexpr __int128 kMaxCells = 200'000'000;

DpTable make_table(std::span<const DpItem> items, std::int64_t cost_bound) {
  if (cost_bound < 0) throw std::invalid_argument("cost_bound must be non-negative");
  for (const DpItem& it : items) {
    if (it.size < 0 || it.cost < 0) throw std::invalid_argument("items must have non-negative size and cost");
  }
  __int128 cells = static_cast<__int128>(items.size() + 1) * (static_cast<__int128>(cost_bound) + 1);
  if (cells > kMaxCells) throw ResourceError("dp table would need " + std::to_string(items.size() + 1) + " x " +
                                             std::to_string(cost_bound + 1) + " cells");

  DpTable table;
  table.items.assign(items.begin(), items.end());
  table.cost_bound = cost_bound;
  table.max_size_.assign(static_cast<std::size_t>(cells), DpTable::kNoSet);
  table.take_.assign(static_cast<std::size_t>(cells), 0);
  table.max_size_[0] = 0;  // empty prefix: only cost 0 is achievable, with size 0
  return table;
}

// One row of the recursion: keep the previous subset (skip) or add item i
// (take, when it fits and the remainder is achievable). Take wins only on a
// strictly larger size, so witnesses retain lower-indexed items across ties.
inline void update_cell(const DpItem& item, const std::int64_t* prev, std::int64_t* cur, std::uint8_t* take,
                        std::int64_t c) {
  std::int64_t best = prev[c];
  std::uint8_t took = 0;
  if (item.cost <= c) {
    std::int64_t rest = prev[c - item.cost];
    if (rest != DpTable::kNoSet) {
      std::int64_t candidate = rest + item.size;
      if (best == DpTable::kNoSet || candidate > best) {
        best = candidate;
        took = 1;
      }
    }
  }
  cur[c] = best;
  take[c] = took;
}

}  // namespace

DpTable build_table(std::span<const DpItem> items, std::int64_t cost_bound) {
  DpTable table = make_table(items, cost_bound);
  const std::size_t stride = table.stride();
  for (std::size_t i = 1; i <= items.size(); ++i) {
    const DpItem item = items[i - 1];
    const std::int64_t* prev = table.max_size_.data() + (i - 1) * stride;
    std::int64_t* cur = table.max_size_.data() + i * stride;
    std::uint8_t* take = table.take_.data() + i * stride;
#pragma omp parallel for schedule(static) if (cost_bound >= 1 << 14)
    for (std::int64_t c = 0; c <= cost_bound; ++c) {
      update_cell(item, prev, cur, take, c);
    }
  }
  return table;
}

DpTable build_table_serial(std::span<const DpItem> items, std::int64_t cost_bound) {
  DpTable table = make_table(items, cost_bound);
  const std::size_t stride = table.stride();
  for (std::size_t i = 1; i <= items.size(); ++i) {
    const DpItem item = items[i - 1];
    const std::int64_t* prev = table.max_size_.data() + (i - 1) * stride;
    std::int64_t* cur = table.max_size_.data() + i * stride;
    std::uint8_t* take = table.take_.data() + i * stride;
    for (std::int64_t c = 0; c <= cost_bound; ++c) {
      update_cell(item, prev, cur, take, c);
    }
  }
  return table;
}

std::vector<std::size_t> DpTable::reconstruct(std::int64_t cost) const {
  if (cost < 0 || cost > cost_bound) throw std::invalid_argument("reconstruct: cost outside table");
  if (at(items.size(), cost) == kNoSet) throw std::invalid_argument("reconstruct: cell holds no subset");
  std::vector<std::size_t> picked;
  std::int64_t c = cost;
  for (std::size_t i = items.size(); i > 0; --i) {
    if (took(i, c)) {
      picked.push_back(i - 1);
      c -= items[i - 1].cost;
    }
  }
  std::reverse(picked.begin(), picked.end());
  return picked;
}

}  // namespace medr
