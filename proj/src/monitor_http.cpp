#include "pcmri/monitor_http.hpp"

#include <charconv>

#include <httplib.h>

namespace pcmri {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

int to_int(const std::string& text, const char* what) {
  int v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw BadRequestError(std::string("bad integer for ") + what);
  return v;
}

int wire_index(const json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_number_integer())
    throw BadRequestError(std::string("missing integer field ") + key);
  return body[key].get<int>() - 1;
}

double wire_value(const json& body) {
  if (!body.contains("value")) throw BadRequestError("missing field value");
  const json& v = body["value"];
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return parse_ratio(v.get<std::string>());
    } catch (const std::exception& e) {
      throw BadRequestError(e.what());
    }
  }
  throw BadRequestError("value must be a number or a ratio string");
}

json parse_body(const httplib::Request& req) {
  auto body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object())
    throw BadRequestError("request body must be a JSON object");
  return body;
}

void reply(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <typename Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const NotFoundError& e) {
      reply(res, {{"error", e.what()}}, 404);
    } catch (const std::invalid_argument& e) {
      reply(res, {{"error", e.what()}}, 400);
    } catch (const std::domain_error& e) {
      reply(res, {{"error", e.what()}}, 400);
    } catch (const std::exception& e) {
      reply(res, {{"error", e.what()}}, 500);
    }
  };
}

}  // namespace

json to_json(const RIRecord& r) {
  return {{"n", r.n},
          {"m", r.m},
          {"graph_id", r.graph_id > 0 ? json(r.graph_id) : json(nullptr)},
          {"canonical_code", r.code_hex()},
          {"random_index", r.random_index},
          {"acceptance_ratio", r.acceptance_ratio},
          {"acceptable_count", r.acceptable_count},
          {"sample_count", r.sample_count},
          {"mode", to_string(r.mode)},
          {"seed", r.mode == RIMode::kMonteCarlo ? json(r.seed) : json(nullptr)},
          {"spectral_radius", r.spectral_radius},
          {"ci_std", r.ci_std}};
}

json to_json(const StatusReport& r) {
  json triads = json::array();
  for (const SuspectTriad& t : r.suspect_triads)
    triads.push_back({{"i", t.i + 1}, {"j", t.j + 1}, {"k", t.k + 1}, {"error", t.error}});
  return {{"n", r.n},
          {"m", r.m},
          {"connected", r.connected},
          {"graph_id", optional_json(r.graph_id)},
          {"canonical_code", optional_json(r.canonical_code)},
          {"spectral_radius", r.spectral_radius},
          {"lambda_star", optional_json(r.lambda_star)},
          {"ci", optional_json(r.ci)},
          {"ri", optional_json(r.ri)},
          {"cr", optional_json(r.cr)},
          {"naive_ri", optional_json(r.naive_ri)},
          {"verdict", to_string(r.verdict)},
          {"suspect_triads", triads}};
}

json to_json(const HistoryEntry& e) {
  return {{"timestamp_ms", e.timestamp_ms},
          {"i", e.i + 1},
          {"j", e.j + 1},
          {"value", optional_json(e.value)}};
}

MonitorHttpServer::MonitorHttpServer(MonitorService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  install_routes();
}

MonitorHttpServer::~MonitorHttpServer() = default;

void MonitorHttpServer::install_routes() {
  auto& s = *server_;
  MonitorService& svc = service_;

  s.Post("/sessions", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    if (!body.contains("n") || !body["n"].is_number_integer())
      throw BadRequestError("missing integer field n");
    reply(res, {{"session_id", svc.create_session(body["n"].get<int>())}}, 201);
  }));

  s.Put(R"(/sessions/([0-9a-f]+)/comparisons)",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          const json body = parse_body(req);
          const int i = wire_index(body, "i");
          const int j = wire_index(body, "j");
          reply(res, to_json(svc.put_comparison(req.matches[1], i, j, wire_value(body))));
        }));

  s.Delete(R"(/sessions/([0-9a-f]+)/comparisons/(-?\d+)/(-?\d+))",
           guarded([&svc](const httplib::Request& req, httplib::Response& res) {
             const int i = to_int(req.matches[2], "i") - 1;
             const int j = to_int(req.matches[3], "j") - 1;
             reply(res, to_json(svc.delete_comparison(req.matches[1], i, j)));
           }));

  s.Get(R"(/sessions/([0-9a-f]+)/status)",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          reply(res, to_json(svc.get_status(req.matches[1])));
        }));

  s.Get(R"(/sessions/([0-9a-f]+))",
        guarded([&svc](const httplib::Request& req, httplib::Response& res) {
          const std::string id = req.matches[1];
          const IncompletePCM pcm = svc.matrix(id);
          json comparisons = json::array();
          for (const Slot& e : pcm.known_slots())
            comparisons.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"value", *pcm.at(e.i, e.j)}});
          json history = json::array();
          for (const HistoryEntry& h : svc.history(id)) history.push_back(to_json(h));
          reply(res, {{"session_id", id},
                      {"n", pcm.size()},
                      {"comparisons", comparisons},
                      {"history", history}});
        }));

  s.Get("/thresholds", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
    for (const char* key : {"n", "m", "code"})
      if (!req.has_param(key))
        throw BadRequestError(std::string("missing query parameter ") + key);
    const int n = to_int(req.get_param_value("n"), "n");
    const int m = to_int(req.get_param_value("m"), "m");
    reply(res, to_json(svc.threshold(n, m, req.get_param_value("code"))));
  }));

  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) reply(res, {{"error", "not found"}}, res.status);
  });
}

bool MonitorHttpServer::listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

int MonitorHttpServer::bind_any_port(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool MonitorHttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void MonitorHttpServer::stop() { server_->stop(); }

void MonitorHttpServer::wait_until_ready() const { server_->wait_until_ready(); }

std::pair<std::string, int> parse_listen_address(const std::string& address) {
  const auto colon = address.rfind(':');
  const std::string host = colon == std::string::npos ? "127.0.0.1" : address.substr(0, colon);
  const std::string port_text = colon == std::string::npos ? address : address.substr(colon + 1);
  int port = 0;
  const auto [end, ec] =
      std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
  if (ec != std::errc{} || end != port_text.data() + port_text.size() || port < 0 ||
      port > 65535 || host.empty())
    throw std::invalid_argument("listen address must look like host:port");
  return {host, port};
}

}  // namespace pcmri
