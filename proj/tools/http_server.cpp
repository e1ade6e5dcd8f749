#include "http_server.hpp"

#include <iostream>

#include <httplib.h>

namespace pauliforge {

void install_routes(httplib::Server& server, SessionService& service) {
  auto forward = [&service](const httplib::Request& req, httplib::Response& res) {
    const ApiResponse out = route_request(service, req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body, "application/json");
  };
  server.Get("/builtins", forward);
  server.Get(R"(/builtins/.+)", forward);
  server.Post("/sessions", forward);
  server.Get(R"(/sessions/.+)", forward);
  server.Post(R"(/sessions/.+)", forward);
}

bool serve(const ServeOptions& options) {
  SessionService service(options.max_sessions);
  httplib::Server server;
  install_routes(server, service);

  if (!options.static_dir.empty() && !server.set_mount_point("/", options.static_dir)) {
    std::cerr << "static directory not found: " << options.static_dir << "\n";
    return false;
  }
  std::cerr << "listening on http://" << options.host << ":" << options.port << "\n";
  return server.listen(options.host, options.port);
}

}  // namespace pauliforge
