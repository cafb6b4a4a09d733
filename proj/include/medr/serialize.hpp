#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "medr/core.hpp"
#include "medr/mechanism.hpp"

namespace medr {

// Canonical JSON forms. nlohmann::json objects keep keys sorted, and every
// exact quantity serializes through Rational::str(), so a given outcome has
// exactly one byte representation — the service equivalence and determinism
// checks compare these strings directly.

nlohmann::json config_to_json(const AuctionConfig& config);
nlohmann::json allocation_to_json(const AllocationResult& allocation);
nlohmann::json outcome_to_json(const MechanismOutcome& outcome);
std::string serialize_outcome(const MechanismOutcome& outcome);

// Accepts {"target_mw": 68, "alpha_usd_per_mwh": "180", "gamma_pue": "1.6",
// "epsilon": "0.5"}. Rational fields may be JSON strings (exact) or numbers;
// a float is re-read from its shortest decimal form, so 1.6 means 8/5.
AuctionConfig config_from_json(const nlohmann::json& j);

// {"tenant_id": "...", "size_mw": 4, "cost_usd": 352}
Bid bid_from_json(const nlohmann::json& j);

// Config file: a JSON object as above, or key=value lines with the same keys.
AuctionConfig load_config_file(const std::filesystem::path& path);
AuctionConfig parse_config_text(const std::string& text, const std::string& origin);

}  // namespace medr
