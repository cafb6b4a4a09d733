#pragma once

#include <cstdint>
#include <string_view>

#include "medr/core.hpp"

namespace medr {

enum class Algorithm {
  kDopt,    // exact table solver
  kFptas,   // monotone approximate solver
  kBesOnly  // cover everything from storage; no winners
};

const char* algorithm_name(Algorithm algorithm);
Algorithm algorithm_from_name(std::string_view name);  // throws ParseError

AllocationResult solve(const Instance& instance, Algorithm algorithm);

struct MechanismOutcome {
  Algorithm allocator = Algorithm::kFptas;
  AllocationResult allocation;
  PaymentSchedule payments;
};

// Threshold bid of a current winner: the largest integer cost at which the
// tenant still wins when everything else is held fixed, found by doubling up
// to a losing probe and then bisecting. Payments must use the same allocator
// that produced the allocation; mixing voids the truthfulness guarantee.
std::int64_t critical_payment(const Instance& instance, const std::string& tenant_id, Algorithm algorithm);

// Allocation plus threshold payments for winners (losers get 0).
MechanismOutcome run_mechanism(const Instance& instance, Algorithm algorithm);

// Instance whose bids declare the true types verbatim, with positional
// tenant ids "tenant1".."tenantN". The rationality check below pairs truths
// with tenants through the same convention.
Instance make_truthful_instance(const std::vector<TrueType>& truths, const AuctionConfig& config);

// Plays `trials` seeded misreports per tenant against the truthful outcome
// and reports any strict utility improvement. Misreporting a larger size
// than the true capability prices the reduction at infinite cost, so a win
// there can never improve on truth.
struct TruthfulnessReport {
  struct Case {
    std::string tenant_id;
    std::int64_t declared_size = 0;
    std::int64_t declared_cost = 0;
    Rational truthful_utility;
    Rational misreport_utility;
  };
  int tenants = 0;
  int trials_per_tenant = 0;
  std::vector<Case> violations;
};
TruthfulnessReport check_truthful(const std::vector<TrueType>& truths, const AuctionConfig& config,
                                  Algorithm algorithm, int trials, std::uint64_t seed);

// Every truthful participant must end with non-negative utility, and winners
// must be paid at least their declared cost.
struct RationalityReport {
  struct Case {
    std::string tenant_id;
    Rational utility;
  };
  std::vector<Case> violations;
};
RationalityReport check_individual_rationality(const MechanismOutcome& outcome,
                                               const std::vector<TrueType>& truths);

}  // namespace medr
