#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "medr/core.hpp"
#include "medr/mechanism.hpp"

namespace medr {

// Auction lifecycle behind the HTTP surface: create with a config, collect
// one bid per tenant while open, close once to clear and price, then serve
// the stored outcome. Every state change appends a JSON-lines event to
// <state_dir>/<id>.jsonl, and a fresh service replays those files, so a
// restart loses nothing.
class AuctionService {
 public:
  explicit AuctionService(std::filesystem::path state_dir, std::size_t max_bids_per_auction = 64);

  struct Snapshot {
    std::string id;
    bool closed = false;
    std::size_t bid_count = 0;                 // all that open auctions disclose
    std::optional<MechanismOutcome> outcome;   // present iff closed
  };

  // Throws ValidationError on a bad config.
  std::string create_auction(const AuctionConfig& config, bool allow_rebid = false);

  // Throws NotFoundError, ConflictError (closed auction or duplicate tenant
  // without the rebid policy), ValidationError (malformed bid).
  void submit_bid(const std::string& auction_id, const Bid& bid);

  // Clears synchronously and stores the outcome. Throws ConflictError when
  // already closed, ValidationError when the auction outgrew the clearing
  // size bound.
  MechanismOutcome close_auction(const std::string& auction_id, Algorithm algorithm);

  Snapshot get_auction(const std::string& auction_id) const;

  std::size_t auction_count() const;

 private:
  struct Auction {
    AuctionConfig config;
    bool allow_rebid = false;
    bool closed = false;
    std::vector<Bid> bids;
    std::optional<MechanismOutcome> outcome;
    mutable std::mutex mutex;
  };

  Auction& locate(const std::string& auction_id) const;
  void append_event(const std::string& auction_id, const std::string& line) const;
  void replay_logs();

  std::filesystem::path state_dir_;
  std::size_t max_bids_;
  mutable std::mutex registry_mutex_;
  std::map<std::string, std::unique_ptr<Auction>> auctions_;
  std::uint64_t next_id_ = 1;
};

}  // namespace medr
