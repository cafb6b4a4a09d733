#pragma once

#include "medr/core.hpp"

namespace medr {

// Exact pseudo-polynomial solver. For each achievable declared-cost total c
// it knows the largest coverable size, then minimizes
//   c + alpha * max(0, W - pue * size)
// over c. Ties go to the smallest c; witness sets drop the highest-indexed
// items first. Zero-size bids are dropped before the table is built.
AllocationResult dopt_solve(const Instance& instance);

// Exhaustive oracle for the exact solver: enumerates every subset of
// participating bids with the same tie-breaking, so the two agree on winner
// sets as well as costs. Refuses more than 25 participating bids.
AllocationResult brute_force_solve(const Instance& instance);

// Degenerate allocation that covers the whole target from storage.
AllocationResult bes_only(const Instance& instance);

}  // namespace medr
