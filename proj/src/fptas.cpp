#include "medr/fptas.hpp"

#include <algorithm>
#include <stdexcept>

#include "medr/dopt.hpp"
#include "medr/dp.hpp"
#include "medr/errors.hpp"
#include "medr/rng.hpp"

namespace medr {

namespace {

using i128 = __int128;

i128 checked_mul(i128 a, i128 b) {
  i128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceError("fptas: 128-bit overflow in rounding arithmetic");
  return out;
}

i128 floor_div(i128 num, i128 den) {
  // den > 0 throughout; round toward negative infinity.
  i128 q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

// Smallest k >= 1 with 2^k >= c_max.
int max_scale_index(std::int64_t c_max) {
  int k = 1;
  while ((static_cast<i128>(1) << k) < c_max) {
    ++k;
    if (k > 62) throw ResourceError("fptas: declared cost too large for the scale sweep");
  }
  return k;
}

}  // namespace

RoundedInstance round_instance(const Instance& instance, int k) {
  if (k < 1) throw std::invalid_argument("round_instance: scale index must be >= 1");
  if (k > 62) throw ResourceError("round_instance: scale index too large");
  require_valid(instance);

  const std::vector<std::size_t> active = participating_indices(instance);
  const i128 n_plus_1 = static_cast<i128>(active.size()) + 1;
  const i128 pow2k = static_cast<i128>(1) << k;
  const Rational& eps = instance.config.epsilon;

  RoundedInstance out;
  out.scale_index = k;
  out.granularity =
      Rational{eps.num(), eps.den()} * Rational{static_cast<std::int64_t>(pow2k), static_cast<std::int64_t>(n_plus_1)};

  const i128 denom = checked_mul(static_cast<i128>(eps.num()), pow2k);
  for (std::size_t idx : active) {
    const std::int64_t cost = instance.bids[idx].cost_usd;
    if (static_cast<i128>(cost) > pow2k) continue;
    i128 numer = checked_mul(checked_mul(static_cast<i128>(cost), static_cast<i128>(eps.den())), n_plus_1);
    out.kept.push_back(idx);
    out.rounded_costs.push_back(static_cast<std::int64_t>(floor_div(numer, denom)));
  }
  return out;
}

Candidate a_r_solve(const Instance& instance, int k) {
  RoundedInstance rounded = round_instance(instance, k);
  const AuctionConfig& cfg = instance.config;

  Candidate candidate;
  candidate.scale_index = k;

  if (cfg.target_mw <= 0) {
    candidate.true_cost = Rational{0};
    return candidate;
  }

  std::vector<DpItem> items;
  items.reserve(rounded.kept.size());
  std::int64_t bound = 0;
  for (std::size_t j = 0; j < rounded.kept.size(); ++j) {
    items.push_back({instance.bids[rounded.kept[j]].size_mw, rounded.rounded_costs[j]});
    bound += rounded.rounded_costs[j];
  }
  DpTable table = build_table(items, bound);

  // Storage term in a_k units:
  //   floor(alpha * (W - pue*A) / a_k)
  //     = floor(an * (W*gd - gn*A) * ed * (n+1) / (ad * gd * en * 2^k)).
  const std::vector<std::size_t> active = participating_indices(instance);
  const i128 n_plus_1 = static_cast<i128>(active.size()) + 1;
  const i128 an = cfg.bes_unit_cost.num();
  const i128 ad = cfg.bes_unit_cost.den();
  const i128 gn = cfg.pue.num();
  const i128 gd = cfg.pue.den();
  const i128 en = cfg.epsilon.num();
  const i128 ed = cfg.epsilon.den();
  const i128 pow2k = static_cast<i128>(1) << k;
  const i128 denom = checked_mul(checked_mul(ad, gd), checked_mul(en, pow2k));
  const i128 target_scaled = checked_mul(static_cast<i128>(cfg.target_mw), gd);

  // Declared cost of the witness set behind a cell, for tie-breaking.
  auto declared_cost_at = [&](std::int64_t c) {
    std::int64_t total = 0;
    for (std::size_t item_idx : table.reconstruct(c)) total += instance.bids[rounded.kept[item_idx]].cost_usd;
    return total;
  };
  // Exact social cost of a cell's witness, scaled by ad*gd to stay integral.
  auto true_key_at = [&](std::int64_t c, std::int64_t size) {
    i128 shortfall_scaled = target_scaled - gn * static_cast<i128>(size);
    if (shortfall_scaled < 0) shortfall_scaled = 0;
    return static_cast<i128>(declared_cost_at(c)) * ad * gd + an * shortfall_scaled;
  };

  // Flooring the storage term can rate two cells equal even though their
  // witnesses differ in real dollars, so rounded-objective ties fall back to
  // the exact social cost (then the smaller rounded cost). The composition
  // over scales compares candidates the same way.
  const std::size_t n_kept = items.size();
  std::int64_t best_cost = -1;
  i128 best_objective = 0;
  i128 best_true_key = 0;
  for (std::int64_t c = 0; c <= bound; ++c) {
    std::int64_t size = table.at(n_kept, c);
    if (size == DpTable::kNoSet) continue;
    i128 objective = c;
    i128 shortfall_scaled = target_scaled - gn * static_cast<i128>(size);
    if (shortfall_scaled > 0) {
      i128 numer = checked_mul(checked_mul(an, shortfall_scaled), checked_mul(ed, n_plus_1));
      objective += floor_div(numer, denom);
    }
    if (best_cost < 0 || objective < best_objective) {
      best_cost = c;
      best_objective = objective;
      best_true_key = true_key_at(c, size);
    } else if (objective == best_objective) {
      i128 true_key = true_key_at(c, size);
      if (true_key < best_true_key) {
        best_cost = c;
        best_true_key = true_key;
      }
    }
  }

  for (std::size_t item_idx : table.reconstruct(best_cost)) {
    candidate.winners.push_back(instance.bids[rounded.kept[item_idx]].tenant_id);
  }
  candidate.rounded_objective = static_cast<std::int64_t>(best_objective);
  candidate.true_cost = social_cost(candidate.winners, instance).social_cost_usd;
  return candidate;
}

const Candidate& min_compose(std::span<const Candidate> candidates) {
  if (candidates.empty()) throw std::invalid_argument("min_compose: no candidates");
  const Candidate* best = &candidates[0];
  for (const Candidate& c : candidates.subspan(1)) {
    if (c.true_cost < best->true_cost) best = &c;
  }
  return *best;
}

AllocationResult fptas_solve(const Instance& instance) {
  require_valid(instance);
  const AuctionConfig& cfg = instance.config;
  if (cfg.target_mw <= 0) return make_allocation(instance, {});

  const std::vector<std::size_t> active = participating_indices(instance);
  if (active.empty()) return make_allocation(instance, {});

  std::int64_t c_max = 0;
  for (std::size_t idx : active) c_max = std::max(c_max, instance.bids[idx].cost_usd);
  if (c_max == 0) {
    // Every participant is free; take them all and fill the rest from storage.
    return make_allocation(instance, active);
  }

  const int k_max = max_scale_index(c_max);
  std::vector<Candidate> candidates(static_cast<std::size_t>(k_max));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (int k = 1; k <= k_max; ++k) {
    try {
      candidates[static_cast<std::size_t>(k - 1)] = a_r_solve(instance, k);
    } catch (...) {
#pragma omp critical(medr_fptas_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  const Candidate& best = min_compose(candidates);
  std::vector<std::size_t> winner_indices;
  for (std::size_t idx : active) {
    const std::string& id = instance.bids[idx].tenant_id;
    if (std::find(best.winners.begin(), best.winners.end(), id) != best.winners.end()) {
      winner_indices.push_back(idx);
    }
  }
  return make_allocation(instance, winner_indices);
}

MonotoneReport check_monotone(const Instance& instance, const std::string& tenant_id, int trials,
                              std::uint64_t seed) {
  AllocationResult base = fptas_solve(instance);
  bool winner = std::find(base.winners.begin(), base.winners.end(), tenant_id) != base.winners.end();
  if (!winner) throw std::invalid_argument("check_monotone: '" + tenant_id + "' is not a winner");

  std::size_t bid_index = 0;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    if (instance.bids[i].tenant_id == tenant_id) bid_index = i;
  }
  const Bid original = instance.bids[bid_index];

  Rng rng(seed);
  MonotoneReport report;
  report.trials = trials;
  Instance probe = instance;
  for (int t = 0; t < trials; ++t) {
    // Higher declaration: size_mw' >= size_mw and cost_usd' <= cost_usd.
    std::int64_t size = original.size_mw + static_cast<std::int64_t>(rng.below(51));
    std::int64_t cost = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(original.cost_usd) + 1));
    probe.bids[bid_index].size_mw = size;
    probe.bids[bid_index].cost_usd = cost;
    AllocationResult shifted = fptas_solve(probe);
    if (std::find(shifted.winners.begin(), shifted.winners.end(), tenant_id) == shifted.winners.end()) {
      report.losses.push_back({size, cost});
    }
  }
  return report;
}

}  // namespace medr
