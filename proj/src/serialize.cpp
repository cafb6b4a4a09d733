#include "medr/serialize.hpp"

#include <fstream>
#include <sstream>

#include "medr/errors.hpp"

namespace medr {

namespace {

Rational rational_from_json(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing config key '" + key + "'");
  const nlohmann::json& v = j.at(key);
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational{v.get<std::int64_t>()};
  if (v.is_number_float()) return Rational::parse(v.dump());  // shortest round-trip decimal
  throw ParseError("config key '" + key + "' must be a number or numeric string");
}

std::int64_t int_from_json(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing key '" + key + "'");
  const nlohmann::json& v = j.at(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) {
    Rational r = Rational::parse(v.get<std::string>());
    if (!r.is_integer()) throw ParseError("key '" + key + "' must be an integer");
    return r.num();
  }
  throw ParseError("key '" + key + "' must be an integer");
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

nlohmann::json config_to_json(const AuctionConfig& config) {
  return nlohmann::json{{"target_mw", config.target_mw},
                        {"alpha_usd_per_mwh", config.bes_unit_cost.str()},
                        {"gamma_pue", config.pue.str()},
                        {"epsilon", config.epsilon.str()}};
}

nlohmann::json allocation_to_json(const AllocationResult& allocation) {
  return nlohmann::json{{"winners", allocation.winners},
                        {"bes_usage_mwh", allocation.bes_usage_mwh.str()},
                        {"social_cost_usd", allocation.social_cost_usd.str()}};
}

nlohmann::json outcome_to_json(const MechanismOutcome& outcome) {
  nlohmann::json payments = nlohmann::json::object();
  for (const auto& [tenant, amount] : outcome.payments.payments) payments[tenant] = amount.str();
  nlohmann::json j = allocation_to_json(outcome.allocation);
  j["algorithm"] = algorithm_name(outcome.allocator);
  j["payments"] = payments;
  return j;
}

std::string serialize_outcome(const MechanismOutcome& outcome) { return outcome_to_json(outcome).dump(); }

AuctionConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("config must be a JSON object");
  AuctionConfig config;
  config.target_mw = int_from_json(j, "target_mw");
  config.bes_unit_cost = rational_from_json(j, "alpha_usd_per_mwh");
  config.pue = rational_from_json(j, "gamma_pue");
  if (j.contains("epsilon")) config.epsilon = rational_from_json(j, "epsilon");
  return config;
}

Bid bid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("bid must be a JSON object");
  if (!j.contains("tenant_id") || !j.at("tenant_id").is_string()) {
    throw ParseError("bid needs a string 'tenant_id'");
  }
  Bid bid;
  bid.tenant_id = j.at("tenant_id").get<std::string>();
  bid.size_mw = int_from_json(j, "size_mw");
  bid.cost_usd = int_from_json(j, "cost_usd");
  return bid;
}

AuctionConfig parse_config_text(const std::string& text, const std::string& origin) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(origin + ": malformed JSON");
    return config_from_json(j);
  }

  nlohmann::json j = nlohmann::json::object();
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(origin + ":" + std::to_string(line_no) + ": expected key=value");
    }
    j[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return config_from_json(j);
}

AuctionConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.filename().string());
}

}  // namespace medr
