#pragma once

namespace httplib {
class Server;
}

namespace crs {

class Service;

// Registers the /api routes on `server`. `service` must outlive the server.
void install_routes(httplib::Server& server, Service& service);

}  // namespace crs
