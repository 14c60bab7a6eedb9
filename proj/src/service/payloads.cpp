#include "skytrace/service/payloads.hpp"

#include <cmath>

#include "skytrace/geo/geojson.hpp"

namespace skytrace::service {

namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

nlohmann::json numbers(const std::vector<double>& values) {
  nlohmann::json out = nlohmann::json::array();
  for (double v : values) out.push_back(number(v));
  return out;
}

}  // namespace

nlohmann::json meta_json(const model::FlightMeta& meta) {
  nlohmann::json j;
  j["start_us"] = meta.start_us;
  j["end_us"] = meta.end_us;
  j["duration_us"] = meta.duration_us;
  j["message_count"] = meta.message_count;
  j["attribute_count"] = meta.attribute_count;
  j["truncated"] = meta.truncated;
  if (meta.reference) {
    j["reference"] = {{"lat", meta.reference->lat}, {"lon", meta.reference->lon}};
  } else {
    j["reference"] = nullptr;
  }
  return j;
}

nlohmann::json messages_json(const ulog::FlightLog& log) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [key, schema] : log.subscriptions()) {
    const ulog::MessageSeries* series = log.find_series(key);
    nlohmann::json fields = nlohmann::json::array();
    for (const auto& name : model::column_names(schema)) {
      if (name == "timestamp") continue;
      const ulog::Column* column = series ? series->find_column(name) : nullptr;
      nlohmann::json f = {{"name", name}};
      if (column) f["type"] = std::string(ulog::scalar_type_name(column->kind()));
      fields.push_back(std::move(f));
    }
    out.push_back({{"name", key.name},
                   {"multi_id", key.multi_id},
                   {"records", series ? series->size() : 0},
                   {"fields", std::move(fields)}});
  }
  return out;
}

nlohmann::json series_json(const model::TimeSeries& series, std::size_t total_points) {
  return {{"attr", series.attr.to_string()},
          {"timestamps", series.timestamps},
          {"values", numbers(series.values)},
          {"total_points", total_points}};
}

nlohmann::json trajectory_json(const geo::EnrichedPath& path) {
  nlohmann::json lat = nlohmann::json::array();
  nlohmann::json lon = nlohmann::json::array();
  nlohmann::json alt = nlohmann::json::array();
  nlohmann::json ts = nlohmann::json::array();
  for (const auto& s : path.samples) {
    ts.push_back(s.timestamp_us);
    lat.push_back(s.lat);
    lon.push_back(s.lon);
    alt.push_back(s.alt_m ? number(*s.alt_m) : nullptr);
  }
  nlohmann::json t_start = nlohmann::json::array();
  nlohmann::json t_end = nlohmann::json::array();
  nlohmann::json values = nlohmann::json::array();
  nlohmann::json colors = nlohmann::json::array();
  nlohmann::json in_window = nlohmann::json::array();
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    const auto& seg = path.segments[i];
    t_start.push_back(seg.t_start_us);
    t_end.push_back(seg.t_end_us);
    values.push_back(seg.value ? number(*seg.value) : nullptr);
    colors.push_back(path.colors[i].hex());
    in_window.push_back(static_cast<bool>(path.in_window[i]));
  }
  nlohmann::json j;
  j["layer"] = model::to_string(path.layer.layer);
  j["source"] = path.layer.source.lat.message;
  j["record_count"] = path.layer.record_count;
  j["points"] = {{"timestamps", std::move(ts)}, {"lat", std::move(lat)}, {"lon", std::move(lon)}, {"alt", std::move(alt)}};
  j["segments"] = {{"t_start", std::move(t_start)},
                   {"t_end", std::move(t_end)},
                   {"values", std::move(values)},
                   {"colors", std::move(colors)},
                   {"in_window", std::move(in_window)}};
  j["attribute"] = path.attribute ? nlohmann::json(path.attribute->to_string()) : nlohmann::json(nullptr);
  j["scale"] = path.scale ? geo::scale_to_json(*path.scale) : nlohmann::json(nullptr);
  j["no_data_color"] = viz::kNoDataColor.hex();
  return j;
}

nlohmann::json events_json(const std::vector<model::Event>& events) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : events) {
    out.push_back({{"timestamp_us", e.timestamp_us},
                   {"kind", model::to_string(e.kind)},
                   {"label", e.label},
                   {"category", e.category_index},
                   {"failsafe", e.failsafe}});
  }
  return out;
}

nlohmann::json overview_json(const std::vector<viz::ChartSpec>& charts) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& chart : charts) {
    nlohmann::json series = nlohmann::json::array();
    for (const auto& s : chart.series) {
      series.push_back({{"attr", s.ref.to_string()},
                        {"message", s.ref.message},
                        {"multi_id", s.ref.multi_id},
                        {"field", s.ref.field},
                        {"label", s.label},
                        {"unit", s.unit},
                        {"scale", s.scale}});
    }
    nlohmann::json c = {{"title", chart.title},
                        {"shared_scale", chart.shared_scale},
                        {"series", std::move(series)},
                        {"render_as", chart.render_as == viz::RenderAs::Chart ? "chart" : "constant"}};
    if (chart.render_as == viz::RenderAs::ConstantRow) {
      c["constant_values"] = numbers(chart.constant_values);
      c["constant_text"] = chart.constant_text();
    }
    out.push_back(std::move(c));
  }
  return out;
}

nlohmann::json error_json(const std::string& error, const std::string& detail) {
  return {{"error", error}, {"detail", detail}};
}

}  // namespace skytrace::service
