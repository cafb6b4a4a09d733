#include "medr/core.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "medr/errors.hpp"

namespace medr {

std::vector<Violation> validate_instance(const Instance& instance) {
  std::vector<Violation> out;
  const AuctionConfig& cfg = instance.config;
  if (cfg.target_mw < 0) {
    out.push_back({"negative_target", "target_mw = " + std::to_string(cfg.target_mw)});
  }
  if (cfg.bes_unit_cost < Rational{0}) {
    out.push_back({"negative_bes_unit_cost", "alpha = " + cfg.bes_unit_cost.str()});
  }
  if (cfg.pue < Rational{1}) {
    out.push_back({"pue_below_one", "gamma = " + cfg.pue.str()});
  }
  if (!(cfg.epsilon > Rational{0})) {
    out.push_back({"nonpositive_epsilon", "epsilon = " + cfg.epsilon.str()});
  }

  std::unordered_set<std::string> seen;
  for (const Bid& bid : instance.bids) {
    if (bid.tenant_id.empty()) {
      out.push_back({"empty_tenant_id", "a bid has no tenant_id"});
    }
    if (!seen.insert(bid.tenant_id).second) {
      out.push_back({"duplicate_tenant_id", bid.tenant_id});
    }
    if (bid.size_mw < 0) {
      out.push_back({"negative_size", bid.tenant_id + ": size_mw = " + std::to_string(bid.size_mw)});
    }
    if (bid.cost_usd < 0) {
      out.push_back({"negative_cost", bid.tenant_id + ": cost_usd = " + std::to_string(bid.cost_usd)});
    }
  }
  return out;
}

void require_valid(const Instance& instance) {
  auto violations = validate_instance(instance);
  if (violations.empty()) return;
  std::string msg = "invalid instance:";
  for (const Violation& v : violations) {
    msg += " [" + v.code + "] " + v.detail + ";";
  }
  throw ValidationError(msg);
}

CostBreakdown social_cost(std::span<const std::string> selection, const Instance& instance) {
  std::unordered_map<std::string, const Bid*> by_id;
  by_id.reserve(instance.bids.size());
  for (const Bid& bid : instance.bids) by_id.emplace(bid.tenant_id, &bid);

  std::unordered_set<std::string> taken;
  std::int64_t total_size = 0;
  std::int64_t total_cost = 0;
  for (const std::string& id : selection) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw std::invalid_argument("selection names unknown tenant '" + id + "'");
    if (!taken.insert(id).second) throw std::invalid_argument("selection repeats tenant '" + id + "'");
    total_size += it->second->size_mw;
    total_cost += it->second->cost_usd;
  }

  const AuctionConfig& cfg = instance.config;
  Rational bes = max(Rational{0}, Rational{cfg.target_mw} - cfg.pue * Rational{total_size});
  CostBreakdown result;
  result.bes_usage_mwh = bes;
  result.social_cost_usd = cfg.bes_unit_cost * bes + Rational{total_cost};
  return result;
}

Rational utility(const Rational& payment, const TrueType& truth, bool won) {
  if (!won) return Rational{0};
  return payment - Rational{truth.cost_usd};
}

std::vector<std::size_t> participating_indices(const Instance& instance) {
  std::vector<std::size_t> out;
  out.reserve(instance.bids.size());
  for (std::size_t i = 0; i < instance.bids.size(); ++i) {
    if (instance.bids[i].participating()) out.push_back(i);
  }
  return out;
}

AllocationResult make_allocation(const Instance& instance, const std::vector<std::size_t>& bid_indices) {
  AllocationResult result;
  result.winners.reserve(bid_indices.size());
  for (std::size_t idx : bid_indices) result.winners.push_back(instance.bids.at(idx).tenant_id);
  CostBreakdown breakdown = social_cost(result.winners, instance);
  result.bes_usage_mwh = breakdown.bes_usage_mwh;
  result.social_cost_usd = breakdown.social_cost_usd;
  return result;
}

}  // namespace medr
