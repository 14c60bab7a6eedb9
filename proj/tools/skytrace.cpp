#include <CLI11.hpp>

#include <charconv>
#include <csignal>
#include <cstring>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "skytrace/error.hpp"
#include "skytrace/geo/geojson.hpp"
#include "skytrace/model/events.hpp"
#include "skytrace/model/meta.hpp"
#include "skytrace/model/series.hpp"
#include "skytrace/service/http_api.hpp"
#include "skytrace/service/payloads.hpp"
#include "skytrace/ulog/parser.hpp"

namespace {

using namespace skytrace;

constexpr int kExitParse = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

struct UnknownName : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_cell(const ulog::Column& column, std::size_t i) {
  char buf[64];
  const std::byte* p = column.raw().data() + i * ulog::scalar_size(column.kind());
  switch (column.kind()) {
    case ulog::ScalarKind::Float32: {
      float f;
      std::memcpy(&f, p, sizeof f);
      auto res = std::to_chars(buf, buf + sizeof buf, f);
      return std::string(buf, res.ptr);
    }
    case ulog::ScalarKind::Float64:
      return format_double(column.as_double(i));
    case ulog::ScalarKind::UInt64: {
      std::uint64_t u;
      std::memcpy(&u, p, sizeof u);
      return std::to_string(u);
    }
    default:
      return std::to_string(column.as_int64(i));
  }
}

ulog::FlightLog load(const std::string& path) {
  const auto bytes = ulog::read_file(path);
  return ulog::parse_log(bytes);
}

std::optional<model::TimeWindow> parse_window(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Usage("window must look like START:END (microseconds)");
  auto number = [&](std::string_view part, std::uint64_t fallback) {
    if (part.empty()) return fallback;
    std::uint64_t v = 0;
    auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size()) throw Usage("bad window bound '" + std::string(part) + "'");
    return v;
  };
  const std::string_view view(text);
  return model::TimeWindow::make(number(view.substr(0, colon), 0),
                                 number(view.substr(colon + 1), std::numeric_limits<std::uint64_t>::max()));
}

model::HierarchyConfig hierarchy_from(const std::string& path) {
  return path.empty() ? model::HierarchyConfig::defaults() : model::HierarchyConfig::load(path);
}

model::AttributeRef resolve_attr(const ulog::FlightLog& log, const model::HierarchyConfig& config,
                                 const std::string& text) {
  auto ref = model::resolve_alias(log, config, text);
  if (!ref) throw UnknownName("unknown attribute '" + text + "'");
  return *ref;
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << text)) throw std::runtime_error("cannot write " + out_path);
}

int cmd_info(const std::string& file, bool as_json, const std::string& hierarchy) {
  const auto log = load(file);
  const auto config = hierarchy_from(hierarchy);
  const auto meta = model::flight_meta(log, config);
  const auto messages = ulog::list_messages(log);
  if (as_json) {
    nlohmann::json j = {{"meta", service::meta_json(meta)}, {"messages", service::messages_json(log)}};
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::ostringstream out;
  out << "file:        " << file << "\n";
  out << "version:     " << int(log.version()) << "\n";
  out << "start_us:    " << meta.start_us << "\n";
  out << "end_us:      " << meta.end_us << "\n";
  out << "duration_s:  " << format_double(static_cast<double>(meta.duration_us) / 1e6) << "\n";
  out << "messages:    " << meta.message_count << "\n";
  out << "attributes:  " << meta.attribute_count << "\n";
  out << "truncated:   " << (log.truncated() ? "yes" : "no") << "\n";
  out << "corrupt:     " << (log.corrupt() ? "yes" : "no") << "\n";
  if (meta.reference) {
    out << "reference:   " << format_double(meta.reference->lat) << ", " << format_double(meta.reference->lon) << "\n";
  } else {
    out << "reference:   none\n";
  }
  for (const auto& w : log.warnings()) out << "warning:     " << w << "\n";
  out << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-40s %4s %9s %6s\n", "message", "inst", "records", "fields");
  out << line;
  for (const auto& m : messages) {
    std::snprintf(line, sizeof line, "%-40s %4d %9zu %6zu\n", m.name.c_str(), int(m.multi_id), m.record_count,
                  m.schema->fields.empty() ? std::size_t{0} : model::column_names(*m.schema).size() - 1);
    out << line;
  }
  std::cout << out.str();
  return 0;
}

int cmd_summarize(const std::string& file, const std::string& attr, const std::string& window,
                  const std::string& hierarchy) {
  const auto log = load(file);
  const auto ref = resolve_attr(log, hierarchy_from(hierarchy), attr);
  const auto series = model::get_series(log, ref, parse_window(window));
  std::cout << "attribute: " << ref.to_string() << "\n";
  if (series.empty()) {
    std::cout << "count:     0\n";
    return 0;
  }
  const auto s = model::summarize(series);
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string("n/a"); };
  std::cout << "count:     " << s.count << "\n";
  std::cout << "non_finite: " << s.nan_count << "\n";
  std::cout << "min:       " << opt(s.min) << "\n";
  std::cout << "max:       " << opt(s.max) << "\n";
  std::cout << "mean:      " << opt(s.mean) << "\n";
  const auto constant = model::detect_constant(series);
  std::cout << "constant:  " << (constant ? format_double(*constant) : std::string("no")) << "\n";
  std::cout << "first_us:  " << series.timestamps.front() << "\n";
  std::cout << "last_us:   " << series.timestamps.back() << "\n";
  return 0;
}

int cmd_export_csv(const std::string& file, const std::string& message, int instance, const std::string& window_text,
                   const std::string& out_path) {
  const auto log = load(file);
  const ulog::SeriesKey key{message, static_cast<std::uint8_t>(instance)};
  if (instance < 0 || instance > 255 || !log.is_subscribed(key)) {
    throw UnknownName("unknown message '" + message + "' instance " + std::to_string(instance));
  }
  const auto window = parse_window(window_text);
  std::ostringstream out;
  const ulog::MessageSeries* series = log.find_series(key);
  const auto names = model::column_names(log.subscriptions().at(key));
  for (std::size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
  out << "\n";
  if (series != nullptr) {
    std::vector<const ulog::Column*> columns;
    for (const auto& name : names) columns.push_back(series->find_column(name));
    for (std::size_t i = 0; i < series->size(); ++i) {
      if (window && !window->contains(series->timestamps()[i])) continue;
      for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_cell(*columns[c], i);
      out << "\n";
    }
  }
  write_output(out_path, out.str());
  return 0;
}

int cmd_export_geojson(const std::string& file, const std::string& attr, const std::string& window,
                       const std::string& scale, const std::string& out_path, const std::string& hierarchy) {
  const auto log = load(file);
  const auto config = hierarchy_from(hierarchy);
  geo::EnrichOptions options;
  if (!attr.empty()) options.attribute = resolve_attr(log, config, attr);
  options.window = parse_window(window);
  const auto kind = viz::parse_scale_kind(scale);
  if (!kind || *kind == viz::ScaleKind::Categorical) throw Usage("unknown scale '" + scale + "'");
  options.scale_kind = *kind;
  write_output(out_path, geo::export_geojson(log, config, options).dump() + "\n");
  return 0;
}

int cmd_events(const std::string& file, const std::string& hierarchy, const std::string& modes) {
  const auto log = load(file);
  const auto table = modes.empty() ? model::FlightModeTable::defaults() : model::FlightModeTable::load(modes);
  for (const auto& e : model::extract_events(log, hierarchy_from(hierarchy), table)) {
    std::cout << e.timestamp_us << "\t" << model::to_string(e.kind) << "\t" << e.category_index << "\t"
              << (e.failsafe ? "failsafe\t" : "\t") << e.label << "\n";
  }
  return 0;
}

service::HttpService* g_service = nullptr;

void on_signal(int) {
  if (g_service != nullptr) g_service->stop();
}

int cmd_serve(service::ServiceConfig config) {
  service::HttpService service(std::move(config));
  const int port = service.bind();
  std::cerr << "listening on http://" << service.config().host << ":" << port << "\n";
  g_service = &service;
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  service.run();
  g_service = nullptr;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skytrace: ULog flight-log analysis"};
  app.require_subcommand(1);

  std::string file, attr, window, out_path, message, hierarchy, modes_path, scale = "sequential";
  bool as_json = false;
  int instance = 0;

  auto* info = app.add_subcommand("info", "Print flight metadata and the message list");
  info->add_option("file", file, "ULog file")->required();
  info->add_flag("--json", as_json, "Emit JSON");
  info->add_option("--hierarchy", hierarchy, "Hierarchy config (YAML)");

  auto* summarize = app.add_subcommand("summarize", "Statistics of one attribute");
  summarize->add_option("file", file, "ULog file")->required();
  summarize->add_option("attr", attr, "Alias or message[/inst]:field")->required();
  summarize->add_option("--window", window, "START:END in microseconds");
  summarize->add_option("--hierarchy", hierarchy, "Hierarchy config (YAML)");

  auto* csv = app.add_subcommand("export-csv", "Write one message series as CSV");
  csv->add_option("file", file, "ULog file")->required();
  csv->add_option("message", message, "Message name")->required();
  csv->add_option("--instance", instance, "Message instance");
  csv->add_option("--window", window, "START:END in microseconds");
  csv->add_option("--out", out_path, "Output path (default stdout)");

  auto* gj = app.add_subcommand("export-geojson", "Write trajectory layers as GeoJSON");
  gj->add_option("file", file, "ULog file")->required();
  gj->add_option("--attr", attr, "Attribute encoded per segment");
  gj->add_option("--window", window, "START:END in microseconds");
  gj->add_option("--scale", scale, "sequential | diverging | cyclic");
  gj->add_option("--out", out_path, "Output path (default stdout)");
  gj->add_option("--hierarchy", hierarchy, "Hierarchy config (YAML)");

  auto* events = app.add_subcommand("events", "List flight-mode changes and logged messages");
  events->add_option("file", file, "ULog file")->required();
  events->add_option("--hierarchy", hierarchy, "Hierarchy config (YAML)");
  events->add_option("--flight-modes", modes_path, "Flight mode table (YAML)");

  std::string host, static_dir, overview_path, tile_url;
  int port = -1;
  long ttl_s = -1, max_upload_mb = -1;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service (SKYTRACE_* env vars apply)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)");
  serve->add_option("--ttl", ttl_s, "Idle session TTL in seconds");
  serve->add_option("--max-upload-mb", max_upload_mb, "Upload limit in MiB");
  serve->add_option("--static", static_dir, "Directory served at /");
  serve->add_option("--tile-url", tile_url, "Map tile XYZ URL template");
  serve->add_option("--hierarchy", hierarchy, "Hierarchy config (YAML)");
  serve->add_option("--flight-modes", modes_path, "Flight mode table (YAML)");
  serve->add_option("--overview", overview_path, "Overview profile (YAML)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*info) return cmd_info(file, as_json, hierarchy);
    if (*summarize) return cmd_summarize(file, attr, window, hierarchy);
    if (*csv) return cmd_export_csv(file, message, instance, window, out_path);
    if (*gj) return cmd_export_geojson(file, attr, window, scale, out_path, hierarchy);
    if (*events) return cmd_events(file, hierarchy, modes_path);
    if (*serve) {
      auto config = service::config_from_env();
      if (!host.empty()) config.host = host;
      if (port >= 0) config.port = port;
      if (ttl_s >= 0) config.ttl = std::chrono::seconds(ttl_s);
      if (max_upload_mb >= 0) config.max_upload_bytes = static_cast<std::size_t>(max_upload_mb) * 1024u * 1024u;
      if (!static_dir.empty()) config.static_dir = static_dir;
      if (!tile_url.empty()) config.tile_url_template = tile_url;
      if (!hierarchy.empty()) config.hierarchy = model::HierarchyConfig::load(hierarchy);
      if (!modes_path.empty()) config.modes = model::FlightModeTable::load(modes_path);
      if (!overview_path.empty()) config.profile = viz::OverviewProfile::load(overview_path);
      return cmd_serve(std::move(config));
    }
  } catch (const ulog::ParseError& e) {
    std::cerr << "error: " << ulog::to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const UnknownName& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnknown;
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.code() == ErrorCode::UnknownAttribute) return kExitUnknown;
    return e.code() == ErrorCode::InvalidConfig || e.code() == ErrorCode::InvalidWindow ? kExitUsage : kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return 0;
}
