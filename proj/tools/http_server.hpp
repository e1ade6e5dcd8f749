#pragma once

#include <cstddef>
#include <string>

#include "pauliforge/session.hpp"

namespace httplib {
class Server;
}

namespace pauliforge {

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;  // served at / when set
  std::size_t max_sessions = 64;
};

/// Routes the JSON API on `server` to `service`, which must outlive the server.
void install_routes(httplib::Server& server, SessionService& service);

/// Blocks until the server stops. Returns false when the socket could not be bound.
bool serve(const ServeOptions& options);

}  // namespace pauliforge
