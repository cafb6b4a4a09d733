#pragma once

#include <cstdint>

#include "medr/core.hpp"

namespace medr {

// Scale-k view of an instance. Items priced above 2^k are dropped; the rest
// have their costs floored to multiples of the granularity
//   a_k = epsilon * 2^k / (n + 1),
// where n counts the participating bids of the ORIGINAL instance, not the
// survivors of the price filter. Each item's rounded cost therefore depends
// only on its own declaration and (k, n, epsilon), never on other bids —
// the property the truthfulness argument leans on.
struct RoundedInstance {
  int scale_index = 0;                  // k
  Rational granularity;                 // a_k
  std::vector<std::size_t> kept;        // indices into instance.bids
  std::vector<std::int64_t> rounded_costs;  // parallel to kept
};

// Output of one scale-k solve.
struct Candidate {
  int scale_index = 0;
  std::vector<std::string> winners;       // in instance bid order
  std::int64_t rounded_objective = 0;     // optimal value in a_k units
  Rational true_cost;                     // winners evaluated at declared costs
};

RoundedInstance round_instance(const Instance& instance, int k);

// Exact solve of the scale-k rounded instance: the cost axis of the table is
// in a_k units, and the storage term of the objective is floored into the
// same units. The branch test pue*size < W stays exact; only the objective
// contribution is floored. Rounded-objective ties break by the witness's
// exact social cost, then by the smaller rounded cost.
Candidate a_r_solve(const Instance& instance, int k);

// Candidate with the smallest true cost; ties keep the earliest entry.
const Candidate& min_compose(std::span<const Candidate> candidates);

// Approximate allocator: runs a_r_solve for k = 1..max(1, ceil(log2 c_max))
// and picks the candidate with the smallest true social cost. The winner
// set's cost is within (1 + 2*epsilon) of the exact optimum.
AllocationResult fptas_solve(const Instance& instance);

// Re-runs fptas_solve under sampled higher declarations (size up, cost down)
// of one current winner; a monotone allocator never turns them into losses.
struct MonotoneReport {
  struct Loss {
    std::int64_t size_mw = 0;
    std::int64_t cost_usd = 0;
  };
  int trials = 0;
  std::vector<Loss> losses;
};
MonotoneReport check_monotone(const Instance& instance, const std::string& tenant_id, int trials,
                              std::uint64_t seed);

}  // namespace medr
