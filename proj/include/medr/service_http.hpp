#pragma once

#include <string>

namespace httplib {
class Server;
}

namespace medr {

class AuctionService;

// HTTP surface:
//   POST /auctions                         config body -> {"id": ...}
//   POST /auctions/{id}/bids               bid body -> {"accepted": true}
//   POST /auctions/{id}/close?algorithm=X  -> canonical outcome JSON
//   GET  /auctions/{id}                    -> snapshot (or outcome when closed)
// Domain errors map to 404/409/422; malformed bodies to 400.
void attach_routes(httplib::Server& server, AuctionService& service);

// Blocks serving on "host:port". Returns a process exit code.
int run_service(AuctionService& service, const std::string& listen);

}  // namespace medr
