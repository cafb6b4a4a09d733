#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "medr/core.hpp"
#include "medr/dp.hpp"
#include "medr/mechanism.hpp"
#include "medr/rng.hpp"

namespace medr::testing {

inline bool contains(const std::vector<std::string>& winners, const std::string& id) {
  return std::find(winners.begin(), winners.end(), id) != winners.end();
}

// Independent oracle for one table cell: enumerate subsets of the first
// `prefix` items and maximize size at exactly `cost`.
inline std::int64_t cell_oracle(const std::vector<DpItem>& items, std::size_t prefix, std::int64_t cost) {
  std::int64_t best = DpTable::kNoSet;
  for (std::uint32_t mask = 0; mask < (1u << prefix); ++mask) {
    std::int64_t total_cost = 0;
    std::int64_t total_size = 0;
    for (std::size_t j = 0; j < prefix; ++j) {
      if (mask & (1u << j)) {
        total_cost += items[j].cost;
        total_size += items[j].size;
      }
    }
    if (total_cost == cost) best = std::max(best, total_size);
  }
  return best;
}

// Independent oracle for one rounded-scale solve. Enumeration mirrors the
// solver's cell semantics: for every achievable rounded cost the witness is
// the max-size subset (dropping high indices on ties); cells then compete on
// (floored objective, witness's exact social cost, smaller rounded cost).
struct RoundedOracleResult {
  std::vector<std::string> winners;
  std::int64_t objective = 0;
};
inline RoundedOracleResult rounded_oracle(const Instance& instance, int k) {
  using i128 = __int128;
  std::vector<std::size_t> active = participating_indices(instance);
  const AuctionConfig& cfg = instance.config;

  RoundedOracleResult result;
  if (cfg.target_mw <= 0) return result;

  const i128 n_plus_1 = static_cast<i128>(active.size()) + 1;
  const i128 pow2k = static_cast<i128>(1) << k;
  const i128 en = cfg.epsilon.num();
  const i128 ed = cfg.epsilon.den();
  const i128 an = cfg.bes_unit_cost.num();
  const i128 ad = cfg.bes_unit_cost.den();
  const i128 gn = cfg.pue.num();
  const i128 gd = cfg.pue.den();

  std::vector<std::size_t> kept;
  std::vector<std::int64_t> rounded;
  for (std::size_t idx : active) {
    i128 cost = instance.bids[idx].cost_usd;
    if (cost > pow2k) continue;
    kept.push_back(idx);
    rounded.push_back(static_cast<std::int64_t>(cost * ed * n_plus_1 / (en * pow2k)));
  }

  // Canonical witness per achievable rounded cost.
  struct Cell {
    std::int64_t size = -1;
    std::uint32_t mask = 0;
  };
  std::map<std::int64_t, Cell> cells;
  for (std::uint32_t mask = 0; mask < (1u << kept.size()); ++mask) {
    std::int64_t cost = 0;
    std::int64_t size = 0;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (mask & (1u << j)) {
        cost += rounded[j];
        size += instance.bids[kept[j]].size_mw;
      }
    }
    Cell& cell = cells[cost];
    if (size > cell.size || (size == cell.size && mask < cell.mask)) {
      cell.size = size;
      cell.mask = mask;
    }
  }

  bool have = false;
  i128 best_obj = 0;
  i128 best_true = 0;
  std::int64_t best_cost = 0;
  std::uint32_t best_mask = 0;
  for (const auto& [cost, cell] : cells) {
    i128 obj = cost;
    i128 shortfall = static_cast<i128>(cfg.target_mw) * gd - gn * cell.size;
    if (shortfall > 0) {
      i128 numer = an * shortfall * ed * n_plus_1;
      i128 denom = ad * gd * en * pow2k;
      obj += numer / denom;
    }
    std::int64_t declared = 0;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (cell.mask & (1u << j)) declared += instance.bids[kept[j]].cost_usd;
    }
    i128 true_key = static_cast<i128>(declared) * ad * gd + an * (shortfall > 0 ? shortfall : 0);
    bool better = !have || obj < best_obj || (obj == best_obj && true_key < best_true);
    if (better) {
      have = true;
      best_obj = obj;
      best_true = true_key;
      best_cost = cost;
      best_mask = cell.mask;
    }
  }
  (void)best_cost;

  result.objective = static_cast<std::int64_t>(best_obj);
  for (std::size_t j = 0; j < kept.size(); ++j) {
    if (best_mask & (1u << j)) result.winners.push_back(instance.bids[kept[j]].tenant_id);
  }
  return result;
}

// Linear scan of every integer bid value up to the storage-cost cap: the
// largest winning value, plus whether the win region is a clean prefix.
struct ThresholdScan {
  std::int64_t max_winning = -1;
  bool downward_closed = true;
};
inline ThresholdScan scan_threshold(const Instance& instance, const std::string& tenant_id, Algorithm algorithm) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    if (instance.bids[i].tenant_id == tenant_id) index = i;
  }
  std::int64_t cap = (instance.config.bes_unit_cost * Rational{instance.config.target_mw}).floor() + 1;
  Instance probe = instance;
  ThresholdScan scan;
  for (std::int64_t b = 0; b <= cap; ++b) {
    probe.bids[index].cost_usd = b;
    bool wins = contains(solve(probe, algorithm).winners, tenant_id);
    if (wins) {
      if (scan.max_winning != b - 1 && scan.max_winning >= 0) scan.downward_closed = false;
      scan.max_winning = b;
    }
  }
  return scan;
}

// Random instance family shared with the acceptance suite: mixes zero sizes
// and costs, uncoverable targets and occasional free storage.
inline Instance random_instance(Rng& rng, int max_n, std::int64_t max_size, std::int64_t max_cost,
                                const Rational& epsilon = Rational{1, 2}) {
  Instance instance;
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n)));
  std::int64_t total_size = 0;
  for (int i = 0; i < n; ++i) {
    Bid bid;
    bid.tenant_id = "tenant" + std::to_string(i + 1);
    bid.size_mw = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_size) + 1));
    bid.cost_usd = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(max_cost) + 1));
    total_size += bid.size_mw;
    instance.bids.push_back(std::move(bid));
  }
  instance.config.pue = Rational{static_cast<std::int64_t>(10 + rng.below(11)), 10};
  instance.config.bes_unit_cost = rng.below(20) == 0 ? Rational{0} : Rational{rng.range(50, 400)};
  instance.config.target_mw = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total_size) + 50));
  instance.config.epsilon = epsilon;
  return instance;
}

// Paper-flavored true types for the truthfulness suites: plausible sizes and
// per-MWh rates, target at a coverable fraction of the declared capacity.
inline std::vector<TrueType> random_truths(Rng& rng, int max_n) {
  const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_n)));
  std::vector<TrueType> truths;
  for (int i = 0; i < n; ++i) {
    TrueType t;
    t.size_mw = rng.range(1, 80);
    t.cost_usd = t.size_mw * rng.range(67, 133);
    truths.push_back(t);
  }
  return truths;
}

inline AuctionConfig random_edr_config(Rng& rng, const std::vector<TrueType>& truths) {
  AuctionConfig config;
  config.pue = Rational{static_cast<std::int64_t>(11 + rng.below(10)), 10};
  config.bes_unit_cost = Rational{140 + 20 * static_cast<std::int64_t>(rng.below(10))};
  std::int64_t covered = 0;
  for (const TrueType& t : truths) covered += t.size_mw;
  std::int64_t reach = (config.pue * Rational{covered}).floor();
  config.target_mw = 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(std::max<std::int64_t>(reach, 1))));
  config.epsilon = Rational{1, 2};
  return config;
}

}  // namespace medr::testing
