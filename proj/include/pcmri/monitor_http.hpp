#pragma once

#include <memory>
#include <string>

#include <json.hpp>

#include "pcmri/monitor.hpp"

namespace httplib {
class Server;
}

// HTTP/JSON front end of MonitorService. Alternatives are numbered from 1
// on the wire.
//
//   POST   /sessions                        {"n": 4}  -> {"session_id": ...}
//   PUT    /sessions/{id}/comparisons       {"i", "j", "value"} -> status
//   DELETE /sessions/{id}/comparisons/{i}/{j}          -> status
//   GET    /sessions/{id}/status                       -> status
//   GET    /sessions/{id}                   matrix and history
//   GET    /thresholds?n=&m=&code=                     -> RIRecord
//
// Errors come back as {"error": message} with status 400 or 404.
// suspect_triads is a heuristic: triangles of known comparisons ranked by
// |ln(a_ij a_jk / a_ik)|.

namespace pcmri {

nlohmann::json to_json(const RIRecord& record);
nlohmann::json to_json(const StatusReport& report);
nlohmann::json to_json(const HistoryEntry& entry);

class MonitorHttpServer {
 public:
  explicit MonitorHttpServer(MonitorService& service);
  ~MonitorHttpServer();

  /// Blocks until stop(). Returns false if the address cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it (or -1); serve with
  /// listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  void install_routes();

  MonitorService& service_;
  std::unique_ptr<httplib::Server> server_;
};

/// Splits "host:port"; a bare port means 127.0.0.1. Throws
/// std::invalid_argument on a malformed address.
std::pair<std::string, int> parse_listen_address(const std::string& address);

}  // namespace pcmri
