#include "medr/service.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "medr/errors.hpp"
#include "medr/serialize.hpp"

namespace medr {

namespace {

MechanismOutcome outcome_from_log(const nlohmann::json& event) {
  MechanismOutcome outcome;
  outcome.allocator = algorithm_from_name(event.at("algorithm").get<std::string>());
  const nlohmann::json& alloc = event.at("outcome");
  outcome.allocation.winners = alloc.at("winners").get<std::vector<std::string>>();
  outcome.allocation.bes_usage_mwh = Rational::parse(alloc.at("bes_usage_mwh").get<std::string>());
  outcome.allocation.social_cost_usd = Rational::parse(alloc.at("social_cost_usd").get<std::string>());
  for (const auto& [tenant, amount] : alloc.at("payments").items()) {
    outcome.payments.payments[tenant] = Rational::parse(amount.get<std::string>());
  }
  return outcome;
}

}  // namespace

AuctionService::AuctionService(std::filesystem::path state_dir, std::size_t max_bids_per_auction)
    : state_dir_(std::move(state_dir)), max_bids_(max_bids_per_auction) {
  std::filesystem::create_directories(state_dir_);
  replay_logs();
}

void AuctionService::replay_logs() {
  for (const auto& entry : std::filesystem::directory_iterator(state_dir_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".jsonl") continue;
    const std::string id = entry.path().stem().string();

    auto auction = std::make_unique<Auction>();
    std::ifstream in(entry.path());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      nlohmann::json event = nlohmann::json::parse(line, nullptr, false);
      if (event.is_discarded()) {
        throw ParseError(entry.path().string() + ":" + std::to_string(line_no) + ": malformed event");
      }
      const std::string kind = event.at("event").get<std::string>();
      if (kind == "created") {
        auction->config = config_from_json(event.at("config"));
        auction->allow_rebid = event.value("allow_rebid", false);
      } else if (kind == "bid") {
        Bid bid = bid_from_json(event);
        auto existing = std::find_if(auction->bids.begin(), auction->bids.end(),
                                     [&](const Bid& b) { return b.tenant_id == bid.tenant_id; });
        if (existing != auction->bids.end()) {
          *existing = bid;
        } else {
          auction->bids.push_back(std::move(bid));
        }
      } else if (kind == "closed") {
        auction->closed = true;
        auction->outcome = outcome_from_log(event);
      } else {
        throw ParseError(entry.path().string() + ":" + std::to_string(line_no) + ": unknown event '" + kind + "'");
      }
    }

    // Ids are "a<number>"; keep the counter past everything on disk.
    if (id.size() > 1 && id[0] == 'a') {
      std::uint64_t numeric = 0;
      bool ok = true;
      for (std::size_t i = 1; i < id.size(); ++i) {
        if (id[i] < '0' || id[i] > '9') {
          ok = false;
          break;
        }
        numeric = numeric * 10 + static_cast<std::uint64_t>(id[i] - '0');
      }
      if (ok && numeric >= next_id_) next_id_ = numeric + 1;
    }
    auctions_[id] = std::move(auction);
  }
}

void AuctionService::append_event(const std::string& auction_id, const std::string& line) const {
  std::ofstream out(state_dir_ / (auction_id + ".jsonl"), std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot append to auction log for '" + auction_id + "'");
  out << line << '\n';
}

AuctionService::Auction& AuctionService::locate(const std::string& auction_id) const {
  std::lock_guard lock(registry_mutex_);
  auto it = auctions_.find(auction_id);
  if (it == auctions_.end()) throw NotFoundError("no auction '" + auction_id + "'");
  return *it->second;
}

std::string AuctionService::create_auction(const AuctionConfig& config, bool allow_rebid) {
  Instance probe{config, {}};
  require_valid(probe);

  std::lock_guard lock(registry_mutex_);
  std::string id = "a" + std::to_string(next_id_++);
  auto auction = std::make_unique<Auction>();
  auction->config = config;
  auction->allow_rebid = allow_rebid;
  auctions_[id] = std::move(auction);

  nlohmann::json event{{"event", "created"}, {"config", config_to_json(config)}, {"allow_rebid", allow_rebid}};
  append_event(id, event.dump());
  return id;
}

void AuctionService::submit_bid(const std::string& auction_id, const Bid& bid) {
  Auction& auction = locate(auction_id);
  std::lock_guard lock(auction.mutex);
  if (auction.closed) throw ConflictError("auction '" + auction_id + "' is closed");
  if (bid.tenant_id.empty()) throw ValidationError("bid needs a tenant_id");
  if (bid.size_mw < 0 || bid.cost_usd < 0) {
    throw ValidationError("bid for '" + bid.tenant_id + "' has negative size or cost");
  }

  auto existing = std::find_if(auction.bids.begin(), auction.bids.end(),
                               [&](const Bid& b) { return b.tenant_id == bid.tenant_id; });
  if (existing != auction.bids.end()) {
    if (!auction.allow_rebid) {
      throw ConflictError("tenant '" + bid.tenant_id + "' already bid (single bid per tenant)");
    }
    *existing = bid;
  } else {
    auction.bids.push_back(bid);
  }

  nlohmann::json event{
      {"event", "bid"}, {"tenant_id", bid.tenant_id}, {"size_mw", bid.size_mw}, {"cost_usd", bid.cost_usd}};
  append_event(auction_id, event.dump());
}

MechanismOutcome AuctionService::close_auction(const std::string& auction_id, Algorithm algorithm) {
  Auction& auction = locate(auction_id);
  std::lock_guard lock(auction.mutex);
  if (auction.closed) throw ConflictError("auction '" + auction_id + "' is already closed");
  if (auction.bids.size() > max_bids_) {
    throw ValidationError("auction '" + auction_id + "' holds " + std::to_string(auction.bids.size()) +
                          " bids; the synchronous clearing bound is " + std::to_string(max_bids_));
  }

  Instance instance{auction.config, auction.bids};
  MechanismOutcome outcome = run_mechanism(instance, algorithm);
  auction.closed = true;
  auction.outcome = outcome;

  nlohmann::json event{
      {"event", "closed"}, {"algorithm", algorithm_name(algorithm)}, {"outcome", outcome_to_json(outcome)}};
  append_event(auction_id, event.dump());
  return outcome;
}

AuctionService::Snapshot AuctionService::get_auction(const std::string& auction_id) const {
  Auction& auction = locate(auction_id);
  std::lock_guard lock(auction.mutex);
  Snapshot snapshot;
  snapshot.id = auction_id;
  snapshot.closed = auction.closed;
  snapshot.bid_count = auction.bids.size();
  snapshot.outcome = auction.outcome;
  return snapshot;
}

std::size_t AuctionService::auction_count() const {
  std::lock_guard lock(registry_mutex_);
  return auctions_.size();
}

}  // namespace medr
