#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "medr/rational.hpp"

namespace medr {

// A tenant's declared offer: reduce `size_mw` megawatts of IT load for the
// one-hour event in exchange for `cost_usd` dollars. The event period is one
// hour throughout, so MW and MWh coincide numerically.
struct Bid {
  std::string tenant_id;
  std::int64_t size_mw = 0;
  std::int64_t cost_usd = 0;

  // A zero-size bid declines the event and can never win.
  bool participating() const { return size_mw > 0; }
};

// A tenant's private type. Only simulation and test code ever reads this;
// allocators see declared bids exclusively.
struct TrueType {
  std::int64_t size_mw = 0;  // real reduction capability e_i
  std::int64_t cost_usd = 0; // real cost c_i of performing it
};

struct AuctionConfig {
  std::int64_t target_mw = 0;   // required facility-level reduction W
  Rational bes_unit_cost;       // alpha, $/MWh of backup storage
  Rational pue{1};              // gamma, facility-to-IT power ratio, >= 1
  Rational epsilon{1, 2};       // accuracy knob for the approximate allocator
};

struct Instance {
  AuctionConfig config;
  std::vector<Bid> bids;  // canonical order; index order drives all tie-breaks
};

struct AllocationResult {
  std::vector<std::string> winners;  // in instance bid order
  Rational bes_usage_mwh;            // y, the storage draw covering any shortfall
  Rational social_cost_usd;          // alpha*y + sum of winners' declared costs
};

struct PaymentSchedule {
  std::map<std::string, Rational> payments;  // losers map to 0
};

struct Violation {
  std::string code;    // stable identifier, e.g. "duplicate_tenant_id"
  std::string detail;  // human-readable context
};

// Returns one record per invariant breach; empty means the instance is
// usable by every solver. Violations are data, not exceptions.
std::vector<Violation> validate_instance(const Instance& instance);

// Throws ValidationError listing all violation codes.
void require_valid(const Instance& instance);

// Minimal feasible storage draw for a winner set and the resulting cost:
//   bes = max(0, W - pue * sum of sizes)
//   cost = bes_unit_cost * bes + sum of declared costs.
// Selection entries must name distinct bids of the instance.
struct CostBreakdown {
  Rational bes_usage_mwh;
  Rational social_cost_usd;
};
CostBreakdown social_cost(std::span<const std::string> selection, const Instance& instance);

// Quasilinear utility: payment minus true cost when the tenant won, 0 otherwise.
Rational utility(const Rational& payment, const TrueType& truth, bool won);

// Bids that can actually be allocated (positive size). Order preserved.
std::vector<std::size_t> participating_indices(const Instance& instance);

// AllocationResult for the given bids (by index), with the minimal feasible
// storage fill and its exact cost.
AllocationResult make_allocation(const Instance& instance, const std::vector<std::size_t>& bid_indices);

}  // namespace medr
