#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "skytrace/model/config.hpp"
#include "skytrace/service/session_store.hpp"
#include "skytrace/viz/profile.hpp"

namespace skytrace::service {

struct ServiceConfig {
  std::string host{"127.0.0.1"};
  int port{8080};  // 0 picks a free port
  std::chrono::seconds ttl{std::chrono::minutes(30)};
  std::size_t max_upload_bytes{256u * 1024u * 1024u};
  std::string tile_url_template{
      "https://server.arcgisonline.com/ArcGIS/rest/services/World_Imagery/MapServer/tile/{z}/{y}/{x}"};
  std::optional<std::filesystem::path> static_dir;  // served read-only at /
  model::HierarchyConfig hierarchy{model::HierarchyConfig::defaults()};
  model::FlightModeTable modes{model::FlightModeTable::defaults()};
  viz::OverviewProfile profile{viz::OverviewProfile::defaults()};
};

// Overrides `base` from SKYTRACE_HOST, SKYTRACE_PORT, SKYTRACE_TTL_S,
// SKYTRACE_MAX_UPLOAD_MB, SKYTRACE_TILE_URL, SKYTRACE_STATIC_DIR,
// SKYTRACE_HIERARCHY, SKYTRACE_FLIGHT_MODES and SKYTRACE_OVERVIEW.
// Throws Error(InvalidConfig) on malformed values.
ServiceConfig config_from_env(ServiceConfig base = {});

// HTTP front end. Uploaded logs live only in the in-memory session store.
//
//   POST   /logs                          octet body -> {id, meta}
//   DELETE /logs/{id}
//   GET    /logs/{id}/meta
//   GET    /logs/{id}/messages
//   GET    /logs/{id}/series?msg=&inst=&field=&start=&end=&px=&h=&tol=&budget=
//   GET    /logs/{id}/trajectory?layer=&attr=&start=&end=&scale=&zoom=
//   GET    /logs/{id}/events
//   GET    /logs/{id}/overview
//   GET    /logs/{id}/export.geojson?attr=&start=&end=&scale=
//   GET    /config
class HttpService {
 public:
  explicit HttpService(ServiceConfig config);
  ~HttpService();

  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds the listening socket and returns the port. Throws std::runtime_error.
  int bind();
  // Serves until stop(); bind() must have succeeded.
  void run();
  // bind() + run() on a background thread; returns the port once ready.
  int start();
  void stop();

  SessionStore& sessions();
  const ServiceConfig& config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace skytrace::service
