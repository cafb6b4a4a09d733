#include "medr/mechanism.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "medr/dopt.hpp"
#include "medr/errors.hpp"
#include "medr/fptas.hpp"
#include "medr/rng.hpp"

namespace medr {

namespace {

bool contains(const std::vector<std::string>& winners, const std::string& id) {
  return std::find(winners.begin(), winners.end(), id) != winners.end();
}

// Per-tenant RNG stream so parallel callers draw identical sequences in any
// schedule. SplitMix-style mixing of the base seed with the tenant index.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t lane) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (lane + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Binary search for the largest winning cost declaration of the bid at
// `bid_index`, which must win as currently declared. Doubles the upper probe
// until it loses; a probe above the pure-storage cost alpha*W can never sit
// in a minimum-cost solution, so the doubling is capped just past it.
std::int64_t threshold_search(const Instance& instance, std::size_t bid_index, Algorithm algorithm) {
  const Bid& bid = instance.bids[bid_index];
  const AuctionConfig& cfg = instance.config;

  Instance probe = instance;
  auto wins_at = [&](std::int64_t cost) {
    probe.bids[bid_index].cost_usd = cost;
    return contains(solve(probe, algorithm).winners, bid.tenant_id);
  };

  std::int64_t low = bid.cost_usd;
  const std::int64_t cap = (cfg.bes_unit_cost * Rational{cfg.target_mw}).floor() + 1;
  std::int64_t high = (cfg.bes_unit_cost * cfg.pue * Rational{bid.size_mw}).ceil();
  if (high <= low) high = low + 1;
  while (wins_at(high)) {
    if (high >= cap) {
      throw std::logic_error("threshold_search: '" + bid.tenant_id + "' still wins at the storage-cost cap " +
                             std::to_string(cap));
    }
    high = std::min(high * 2, cap);
  }
  while (high - low > 1) {
    std::int64_t mid = low + (high - low) / 2;
    if (wins_at(mid)) {
      low = mid;
    } else {
      high = mid;
    }
  }
  return low;
}

}  // namespace

const char* algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kDopt: return "dopt";
    case Algorithm::kFptas: return "fptas";
    case Algorithm::kBesOnly: return "bes";
  }
  return "unknown";
}

Algorithm algorithm_from_name(std::string_view name) {
  if (name == "dopt") return Algorithm::kDopt;
  if (name == "fptas") return Algorithm::kFptas;
  if (name == "bes") return Algorithm::kBesOnly;
  throw ParseError("unknown algorithm '" + std::string(name) + "' (expected dopt, fptas or bes)");
}

AllocationResult solve(const Instance& instance, Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kDopt: return dopt_solve(instance);
    case Algorithm::kFptas: return fptas_solve(instance);
    case Algorithm::kBesOnly: return bes_only(instance);
  }
  throw std::invalid_argument("unhandled algorithm");
}

std::int64_t critical_payment(const Instance& instance, const std::string& tenant_id, Algorithm algorithm) {
  AllocationResult base = solve(instance, algorithm);
  if (!contains(base.winners, tenant_id)) {
    throw std::invalid_argument("critical_payment: '" + tenant_id + "' is not a winner");
  }
  std::size_t bid_index = 0;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    if (instance.bids[i].tenant_id == tenant_id) bid_index = i;
  }
  return threshold_search(instance, bid_index, algorithm);
}

MechanismOutcome run_mechanism(const Instance& instance, Algorithm algorithm) {
  MechanismOutcome outcome;
  outcome.allocator = algorithm;
  outcome.allocation = solve(instance, algorithm);

  std::vector<std::size_t> winner_indices;
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    if (contains(outcome.allocation.winners, instance.bids[i].tenant_id)) winner_indices.push_back(i);
  }

  std::vector<std::int64_t> thresholds(winner_indices.size(), 0);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t j = 0; j < winner_indices.size(); ++j) {
    try {
      thresholds[j] = threshold_search(instance, winner_indices[j], algorithm);
    } catch (...) {
#pragma omp critical(medr_mechanism_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (const Bid& bid : instance.bids) outcome.payments.payments[bid.tenant_id] = Rational{0};
  for (std::size_t j = 0; j < winner_indices.size(); ++j) {
    outcome.payments.payments[instance.bids[winner_indices[j]].tenant_id] = Rational{thresholds[j]};
  }
  return outcome;
}

Instance make_truthful_instance(const std::vector<TrueType>& truths, const AuctionConfig& config) {
  Instance instance;
  instance.config = config;
  instance.bids.reserve(truths.size());
  for (std::size_t i = 0; i < truths.size(); ++i) {
    instance.bids.push_back({"tenant" + std::to_string(i + 1), truths[i].size_mw, truths[i].cost_usd});
  }
  return instance;
}

TruthfulnessReport check_truthful(const std::vector<TrueType>& truths, const AuctionConfig& config,
                                  Algorithm algorithm, int trials, std::uint64_t seed) {
  const Instance truthful = make_truthful_instance(truths, config);
  const MechanismOutcome outcome = run_mechanism(truthful, algorithm);

  TruthfulnessReport report;
  report.tenants = static_cast<int>(truths.size());
  report.trials_per_tenant = trials;

  std::vector<std::vector<TruthfulnessReport::Case>> found(truths.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t i = 0; i < truths.size(); ++i) {
    try {
      const TrueType& truth = truths[i];
      const std::string& id = truthful.bids[i].tenant_id;
      const bool won_truthful = contains(outcome.allocation.winners, id);
      const Rational truthful_utility =
          utility(won_truthful ? outcome.payments.payments.at(id) : Rational{0}, truth, won_truthful);

      Rng rng(mix_seed(seed, i));
      Instance probe = truthful;
      for (int t = 0; t < trials; ++t) {
        const std::int64_t size_menu[5] = {truth.size_mw - 1, truth.size_mw, truth.size_mw + 1,
                                           truth.size_mw / 2, truth.size_mw * 2};
        std::int64_t declared_size = std::max<std::int64_t>(0, size_menu[rng.below(5)]);
        std::int64_t declared_cost =
            static_cast<std::int64_t>(rng.below(2 * static_cast<std::uint64_t>(truth.cost_usd) + 1));
        probe.bids[i].size_mw = declared_size;
        probe.bids[i].cost_usd = declared_cost;

        AllocationResult shifted = solve(probe, algorithm);
        std::optional<Rational> misreport_utility;
        if (!contains(shifted.winners, id)) {
          misreport_utility = Rational{0};
        } else if (declared_size > truth.size_mw) {
          // Single-minded over-declaration: winning obliges a reduction beyond
          // the true capability, which prices at infinite cost.
          misreport_utility = std::nullopt;
        } else {
          Rational payment{threshold_search(probe, i, algorithm)};
          misreport_utility = payment - Rational{truth.cost_usd};
        }
        if (misreport_utility && *misreport_utility > truthful_utility) {
          found[i].push_back({id, declared_size, declared_cost, truthful_utility, *misreport_utility});
        }
      }
    } catch (...) {
#pragma omp critical(medr_truthful_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& cases : found) {
    report.violations.insert(report.violations.end(), cases.begin(), cases.end());
  }
  return report;
}

RationalityReport check_individual_rationality(const MechanismOutcome& outcome,
                                               const std::vector<TrueType>& truths) {
  RationalityReport report;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const std::string id = "tenant" + std::to_string(i + 1);
    const bool won = contains(outcome.allocation.winners, id);
    auto it = outcome.payments.payments.find(id);
    const Rational payment = it == outcome.payments.payments.end() ? Rational{0} : it->second;
    const Rational u = utility(payment, truths[i], won);
    if (u < Rational{0} || (won && payment < Rational{truths[i].cost_usd})) {
      report.violations.push_back({id, u});
    }
  }
  return report;
}

}  // namespace medr
