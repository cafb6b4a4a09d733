#include "medr/dopt.hpp"

#include <cstdint>

#include "medr/dp.hpp"
#include "medr/errors.hpp"

namespace medr {

namespace {
using i128 = __int128;
}  // namespace

AllocationResult dopt_solve(const Instance& instance) {
  require_valid(instance);
  const AuctionConfig& cfg = instance.config;
  if (cfg.target_mw <= 0) return make_allocation(instance, {});

  std::vector<std::size_t> active = participating_indices(instance);
  std::vector<DpItem> items;
  items.reserve(active.size());
  std::int64_t cost_sum = 0;
  for (std::size_t idx : active) {
    items.push_back({instance.bids[idx].size_mw, instance.bids[idx].cost_usd});
    cost_sum += instance.bids[idx].cost_usd;
  }

  DpTable table = build_table(items, cost_sum);

  // Social cost comparisons stay in integers: with alpha = an/ad and
  // pue = gn/gd, cost(c) scaled by ad*gd is c*ad*gd + an*max(0, W*gd - gn*A).
  const i128 an = cfg.bes_unit_cost.num();
  const i128 ad = cfg.bes_unit_cost.den();
  const i128 gn = cfg.pue.num();
  const i128 gd = cfg.pue.den();
  const i128 scale = ad * gd;
  const i128 target_scaled = static_cast<i128>(cfg.target_mw) * gd;

  const std::size_t n = items.size();
  std::int64_t best_cost = -1;
  i128 best_key = 0;
  for (std::int64_t c = 0; c <= cost_sum; ++c) {
    std::int64_t size = table.at(n, c);
    if (size == DpTable::kNoSet) continue;
    i128 shortfall = target_scaled - gn * static_cast<i128>(size);
    if (shortfall < 0) shortfall = 0;
    i128 key = static_cast<i128>(c) * scale + an * shortfall;
    if (best_cost < 0 || key < best_key) {
      best_cost = c;
      best_key = key;
    }
  }

  std::vector<std::size_t> winners;
  for (std::size_t item_idx : table.reconstruct(best_cost)) winners.push_back(active[item_idx]);
  return make_allocation(instance, winners);
}

AllocationResult brute_force_solve(const Instance& instance) {
  require_valid(instance);
  const AuctionConfig& cfg = instance.config;
  if (cfg.target_mw <= 0) return make_allocation(instance, {});

  std::vector<std::size_t> active = participating_indices(instance);
  if (active.size() > 25) {
    throw ValidationError("brute_force_solve: " + std::to_string(active.size()) + " bids exceeds the 2^25 budget");
  }

  const i128 an = cfg.bes_unit_cost.num();
  const i128 ad = cfg.bes_unit_cost.den();
  const i128 gn = cfg.pue.num();
  const i128 gd = cfg.pue.den();
  const i128 scale = ad * gd;
  const i128 target_scaled = static_cast<i128>(cfg.target_mw) * gd;

  // Tie order mirrors the table solver: cost key, then smaller declared-cost
  // total, then larger covered size, then the subset that sheds the
  // highest-indexed bids first (= smaller mask integer).
  std::uint32_t best_mask = 0;
  i128 best_key = 0;
  std::int64_t best_cost = 0;
  std::int64_t best_size = 0;
  bool have_best = false;

  const std::uint32_t limit = static_cast<std::uint32_t>(1u << active.size());
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    std::int64_t total_size = 0;
    std::int64_t total_cost = 0;
    for (std::size_t j = 0; j < active.size(); ++j) {
      if (mask & (1u << j)) {
        total_size += instance.bids[active[j]].size_mw;
        total_cost += instance.bids[active[j]].cost_usd;
      }
    }
    i128 shortfall = target_scaled - gn * static_cast<i128>(total_size);
    if (shortfall < 0) shortfall = 0;
    i128 key = static_cast<i128>(total_cost) * scale + an * shortfall;
    bool better = !have_best || key < best_key ||
                  (key == best_key && (total_cost < best_cost ||
                                       (total_cost == best_cost && (total_size > best_size ||
                                                                    (total_size == best_size && mask < best_mask)))));
    if (better) {
      have_best = true;
      best_mask = mask;
      best_key = key;
      best_cost = total_cost;
      best_size = total_size;
    }
  }

  std::vector<std::size_t> winners;
  for (std::size_t j = 0; j < active.size(); ++j) {
    if (best_mask & (1u << j)) winners.push_back(active[j]);
  }
  return make_allocation(instance, winners);
}

AllocationResult bes_only(const Instance& instance) {
  require_valid(instance);
  return make_allocation(instance, {});
}

}  // namespace medr
