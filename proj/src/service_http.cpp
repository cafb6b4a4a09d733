#include "medr/service_http.hpp"

#include <cstdio>

#include <httplib.h>
#include <json.hpp>

#include "medr/errors.hpp"
#include "medr/serialize.hpp"
#include "medr/service.hpp"

namespace medr {

namespace {

void reply_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(nlohmann::json{{"error", message}}.dump(), "application/json");
}

// Domain exceptions carry the HTTP status; anything else is a 500.
void handle(httplib::Response& res, const std::function<void()>& body) {
  try {
    body();
  } catch (const NotFoundError& e) {
    reply_error(res, 404, e.what());
  } catch (const ConflictError& e) {
    reply_error(res, 409, e.what());
  } catch (const ValidationError& e) {
    reply_error(res, 422, e.what());
  } catch (const ParseError& e) {
    reply_error(res, 400, e.what());
  } catch (const std::exception& e) {
    reply_error(res, 500, e.what());
  }
}

nlohmann::json parse_body(const httplib::Request& req) {
  nlohmann::json j = nlohmann::json::parse(req.body, nullptr, false);
  if (j.is_discarded()) throw ParseError("request body is not valid JSON");
  return j;
}

}  // namespace

void attach_routes(httplib::Server& server, AuctionService& service) {
  server.Post("/auctions", [&service](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] {
      nlohmann::json body = parse_body(req);
      AuctionConfig config = config_from_json(body);
      bool allow_rebid = body.value("allow_rebid", false);
      std::string id = service.create_auction(config, allow_rebid);
      res.status = 201;
      res.set_content(nlohmann::json{{"id", id}}.dump(), "application/json");
    });
  });

  server.Post(R"(/auctions/([^/]+)/bids)", [&service](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] {
      Bid bid = bid_from_json(parse_body(req));
      service.submit_bid(req.matches[1].str(), bid);
      res.set_content(nlohmann::json{{"accepted", true}}.dump(), "application/json");
    });
  });

  server.Post(R"(/auctions/([^/]+)/close)", [&service](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] {
      Algorithm algorithm = Algorithm::kFptas;
      if (req.has_param("algorithm")) algorithm = algorithm_from_name(req.get_param_value("algorithm"));
      MechanismOutcome outcome = service.close_auction(req.matches[1].str(), algorithm);
      res.set_content(serialize_outcome(outcome), "application/json");
    });
  });

  server.Get(R"(/auctions/([^/]+))", [&service](const httplib::Request& req, httplib::Response& res) {
    handle(res, [&] {
      AuctionService::Snapshot snapshot = service.get_auction(req.matches[1].str());
      nlohmann::json j{{"id", snapshot.id}, {"state", snapshot.closed ? "closed" : "open"}};
      if (snapshot.closed) {
        j["outcome"] = outcome_to_json(*snapshot.outcome);
      } else {
        // Open auctions disclose only the bid count, never others' bids.
        j["bids"] = snapshot.bid_count;
      }
      res.set_content(j.dump(), "application/json");
    });
  });
}

int run_service(AuctionService& service, const std::string& listen) {
  std::string host = "127.0.0.1";
  int port = 8080;
  if (!listen.empty()) {
    std::size_t colon = listen.rfind(':');
    if (colon == std::string::npos) {
      std::fprintf(stderr, "bad --listen '%s', expected host:port\n", listen.c_str());
      return 2;
    }
    host = listen.substr(0, colon);
    try {
      port = std::stoi(listen.substr(colon + 1));
    } catch (const std::exception&) {
      std::fprintf(stderr, "bad port in --listen '%s'\n", listen.c_str());
      return 2;
    }
  }

  httplib::Server server;
  attach_routes(server, service);
  std::fprintf(stderr, "listening on %s:%d\n", host.c_str(), port);
  if (!server.listen(host, port)) {
    std::fprintf(stderr, "failed to bind %s:%d\n", host.c_str(), port);
    return 1;
  }
  return 0;
}

}  // namespace medr
