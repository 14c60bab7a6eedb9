#include "skytrace/service/http_api.hpp"

#include <httplib.h>

#include <charconv>
#include <cstdlib>
#include <limits>
#include <thread>

#include "skytrace/error.hpp"
#include "skytrace/geo/chart.hpp"
#include "skytrace/geo/geojson.hpp"
#include "skytrace/model/events.hpp"
#include "skytrace/model/meta.hpp"
#include "skytrace/service/payloads.hpp"
#include "skytrace/ulog/parser.hpp"

namespace skytrace::service {

namespace {

// Malformed request parameters.
struct BadRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) return std::nullopt;
  return value;
}

template <typename T>
std::optional<T> number_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  const std::string text = req.get_param_value(name);
  auto value = parse_number<T>(text);
  if (!value) throw BadRequest(std::string("parameter '") + name + "' is not a valid number: '" + text + "'");
  return value;
}

std::optional<std::string> string_param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

std::optional<model::TimeWindow> window_params(const httplib::Request& req) {
  const auto start = number_param<std::uint64_t>(req, "start");
  const auto end = number_param<std::uint64_t>(req, "end");
  if (!start && !end) return std::nullopt;
  return model::TimeWindow::make(start.value_or(0), end.value_or(std::numeric_limits<std::uint64_t>::max()));
}

viz::ScaleKind scale_param(const httplib::Request& req) {
  const auto text = string_param(req, "scale");
  if (!text) return viz::ScaleKind::Sequential;
  const auto kind = viz::parse_scale_kind(*text);
  if (!kind || *kind == viz::ScaleKind::Categorical) throw BadRequest("unknown scale '" + *text + "'");
  return *kind;
}

void send_json(httplib::Response& res, int status, const nlohmann::json& body,
               const char* content_type = "application/json") {
  res.status = status;
  res.set_content(body.dump(), content_type);
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownAttribute:
    case ErrorCode::NoPosition:
      return 404;
    default:
      return 400;
  }
}

template <typename F>
void guarded(httplib::Response& res, F&& handler) {
  try {
    handler();
  } catch (const ulog::ParseError& e) {
    send_json(res, 400, error_json(ulog::to_string(e.kind()), e.what()));
  } catch (const Error& e) {
    send_json(res, status_for(e.code()), error_json(to_string(e.code()), e.what()));
  } catch (const BadRequest& e) {
    send_json(res, 400, error_json("BadRequest", e.what()));
  } catch (const NotFound& e) {
    send_json(res, 404, error_json("NotFound", e.what()));
  } catch (const std::exception& e) {
    send_json(res, 500, error_json("InternalError", e.what()));
  }
}

}  // namespace

struct HttpService::Impl {
  explicit Impl(ServiceConfig c) : config(std::move(c)), store(config.ttl) {}

  ServiceConfig config;
  SessionStore store;
  httplib::Server server;
  std::thread thread;
  int port{-1};

  std::shared_ptr<const Session> session(const httplib::Request& req) {
    const std::string id = req.matches[1];
    auto s = store.find(id);
    if (!s) throw NotFound("unknown or expired session '" + id + "'");
    return s;
  }

  model::AttributeRef attribute(const ulog::FlightLog& log, const std::string& text) {
    auto ref = model::resolve_alias(log, config.hierarchy, text);
    if (!ref) throw Error(ErrorCode::UnknownAttribute, "unknown attribute '" + text + "'");
    return *ref;
  }

  geo::EnrichOptions enrich_options(const httplib::Request& req, const ulog::FlightLog& log) {
    geo::EnrichOptions options;
    if (auto attr = string_param(req, "attr")) options.attribute = attribute(log, *attr);
    options.window = window_params(req);
    options.scale_kind = scale_param(req);
    options.zoom = number_param<double>(req, "zoom");
    if (options.zoom && !(*options.zoom >= 0.0 && *options.zoom <= 30.0)) throw BadRequest("zoom must be in [0, 30]");
    return options;
  }

  void routes();
};

void HttpService::Impl::routes() {
  server.set_payload_max_length(config.max_upload_bytes);
  if (config.static_dir) server.set_mount_point("/", config.static_dir->string());

  server.Get("/config", [this](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200,
              {{"tile_url_template", config.tile_url_template},
               {"ttl_s", config.ttl.count()},
               {"max_upload_bytes", config.max_upload_bytes},
               {"chart_tolerance_px", geo::kDefaultChartTolerancePx},
               {"map_tolerance_px", geo::kDefaultMapTolerancePx},
               {"point_budget", geo::kDefaultPointBudget}});
  });

  server.Post("/logs", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto* data = reinterpret_cast<const std::uint8_t*>(req.body.data());
      ulog::FlightLog log = ulog::parse_log({data, req.body.size()});
      const model::FlightMeta meta = model::flight_meta(log, config.hierarchy);
      auto session = store.open(std::move(log), meta);
      send_json(res, 200, {{"id", session->id}, {"meta", meta_json(meta)}});
    });
  });

  server.Delete(R"(/logs/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!store.close(req.matches[1])) throw NotFound("unknown session");
      res.status = 204;
    });
  });

  server.Get(R"(/logs/([^/]+)/meta)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, meta_json(session(req)->meta)); });
  });

  server.Get(R"(/logs/([^/]+)/messages)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, messages_json(*session(req)->log)); });
  });

  server.Get(R"(/logs/([^/]+)/series)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto s = session(req);
      const auto& log = *s->log;
      model::AttributeRef ref;
      if (auto attr = string_param(req, "attr")) {
        ref = attribute(log, *attr);
      } else {
        const auto msg = string_param(req, "msg");
        const auto field = string_param(req, "field");
        if (!msg || !field) throw BadRequest("series needs msg and field (or attr)");
        const auto inst = number_param<unsigned>(req, "inst").value_or(0);
        if (inst > 255) throw BadRequest("inst must be 0..255");
        ref = {*msg, static_cast<std::uint8_t>(inst), *field};
      }
      const auto window = window_params(req);
      const model::TimeSeries series = model::get_series(log, ref, window);

      geo::ChartReduceOptions options;
      options.width_px = number_param<double>(req, "px").value_or(options.width_px);
      options.height_px = number_param<double>(req, "h").value_or(options.height_px);
      options.tolerance_px = number_param<double>(req, "tol").value_or(options.tolerance_px);
      options.budget = number_param<std::size_t>(req, "budget").value_or(options.budget);
      if (!(options.width_px > 0.0) || !(options.height_px > 0.0)) throw BadRequest("px and h must be positive");
      if (!(options.tolerance_px >= 0.0)) throw BadRequest("tol must be >= 0");
      if (window && !series.empty()) {
        options.x_domain = model::TimeWindow::make(std::max(window->start_us, series.timestamps.front()),
                                                   std::min(window->end_us, series.timestamps.back()));
      }
      // y domain over the whole flight
      if (!series.empty()) {
        const auto full = model::summarize(model::get_series(log, ref));
        if (full.min && full.max) options.y_domain = std::make_pair(*full.min, *full.max);
      }
      send_json(res, 200, series_json(geo::reduce_for_chart(series, options), series.size()));
    });
  });

  server.Get(R"(/logs/([^/]+)/trajectory)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto s = session(req);
      const std::string layer_name = string_param(req, "layer").value_or("recorded");
      const auto layer = model::parse_path_layer(layer_name);
      if (!layer) throw BadRequest("unknown layer '" + layer_name + "'");
      const auto options = enrich_options(req, *s->log);
      const auto path = geo::enrich_layer(*s->log, config.hierarchy, *layer, options);
      if (!path) throw Error(ErrorCode::NoPosition, "log has no " + layer_name + " path");
      send_json(res, 200, trajectory_json(*path));
    });
  });

  server.Get(R"(/logs/([^/]+)/events)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto s = session(req);
      send_json(res, 200, events_json(model::extract_events(*s->log, config.hierarchy, config.modes)));
    });
  });

  server.Get(R"(/logs/([^/]+)/overview)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { send_json(res, 200, overview_json(viz::resolve_profile(config.profile, *session(req)->log))); });
  });

  server.Get(R"(/logs/([^/]+)/export\.geojson)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto s = session(req);
      const auto options = enrich_options(req, *s->log);
      send_json(res, 200, geo::export_geojson(*s->log, config.hierarchy, options), "application/geo+json");
    });
  });
}

HttpService::HttpService(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
  impl_->routes();
  impl_->store.start_eviction(std::chrono::milliseconds(
      std::clamp<std::int64_t>(impl_->config.ttl.count() * 1000 / 4, 10, 60'000)));
}

HttpService::~HttpService() { stop(); }

int HttpService::bind() {
  if (impl_->port >= 0) return impl_->port;
  if (impl_->config.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(impl_->config.host);
  } else if (impl_->server.bind_to_port(impl_->config.host, impl_->config.port)) {
    impl_->port = impl_->config.port;
  }
  if (impl_->port < 0) {
    throw std::runtime_error("cannot bind " + impl_->config.host + ":" + std::to_string(impl_->config.port));
  }
  return impl_->port;
}

void HttpService::run() { impl_->server.listen_after_bind(); }

int HttpService::start() {
  const int port = bind();
  impl_->thread = std::thread([this] { run(); });
  impl_->server.wait_until_ready();
  return port;
}

void HttpService::stop() {
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
  impl_->store.stop_eviction();
}

SessionStore& HttpService::sessions() { return impl_->store; }
const ServiceConfig& HttpService::config() const { return impl_->config; }

ServiceConfig config_from_env(ServiceConfig base) {
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
  };
  auto integer = [&](const char* name, const std::string& text) {
    auto v = parse_number<std::int64_t>(text);
    if (!v || *v < 0) throw Error(ErrorCode::InvalidConfig, std::string(name) + " must be a non-negative integer");
    return *v;
  };
  if (auto v = env("SKYTRACE_HOST")) base.host = *v;
  if (auto v = env("SKYTRACE_PORT")) {
    const auto port = integer("SKYTRACE_PORT", *v);
    if (port > 65535) throw Error(ErrorCode::InvalidConfig, "SKYTRACE_PORT out of range");
    base.port = static_cast<int>(port);
  }
  if (auto v = env("SKYTRACE_TTL_S")) base.ttl = std::chrono::seconds(integer("SKYTRACE_TTL_S", *v));
  if (auto v = env("SKYTRACE_MAX_UPLOAD_MB")) {
    base.max_upload_bytes = static_cast<std::size_t>(integer("SKYTRACE_MAX_UPLOAD_MB", *v)) * 1024u * 1024u;
  }
  if (auto v = env("SKYTRACE_TILE_URL")) base.tile_url_template = *v;
  if (auto v = env("SKYTRACE_STATIC_DIR")) base.static_dir = *v;
  if (auto v = env("SKYTRACE_HIERARCHY")) base.hierarchy = model::HierarchyConfig::load(*v);
  if (auto v = env("SKYTRACE_FLIGHT_MODES")) base.modes = model::FlightModeTable::load(*v);
  if (auto v = env("SKYTRACE_OVERVIEW")) base.profile = viz::OverviewProfile::load(*v);
  return base;
}

}  // namespace skytrace::service
