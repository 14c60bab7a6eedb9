#include "skytrace/geo/geojson.hpp"

#include <cmath>

namespace skytrace::geo {

namespace {

nlohmann::json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

}  // namespace

nlohmann::json scale_to_json(const viz::ColorScale& scale) {
  nlohmann::json j;
  j["kind"] = viz::to_string(scale.kind());
  if (scale.kind() == viz::ScaleKind::Categorical) {
    j["categories"] = scale.categories();
  } else {
    j["domain"] = {scale.domain_min(), scale.domain_max()};
  }
  auto& stops = j["stops"] = nlohmann::json::array();
  for (const auto& c : scale.stops()) stops.push_back(c.hex());
  return j;
}

nlohmann::json path_feature(const EnrichedPath& path) {
  nlohmann::json coords = nlohmann::json::array();
  nlohmann::json timestamps = nlohmann::json::array();
  for (const GeoSample& s : path.samples) {
    nlohmann::json c = {s.lon, s.lat};
    if (s.alt_m) c.push_back(*s.alt_m);
    coords.push_back(std::move(c));
    timestamps.push_back(s.timestamp_us);
  }
  nlohmann::json values = nlohmann::json::array();
  nlohmann::json colors = nlohmann::json::array();
  nlohmann::json in_window = nlohmann::json::array();
  for (std::size_t i = 0; i < path.segments.size(); ++i) {
    values.push_back(number_or_null(path.segments[i].value));
    colors.push_back(path.colors[i].hex());
    in_window.push_back(static_cast<bool>(path.in_window[i]));
  }

  nlohmann::json props;
  props["layer"] = model::to_string(path.layer.layer);
  props["source"] = path.layer.source.lat.message;
  props["timestamps"] = std::move(timestamps);
  props["attribute"] = path.attribute ? nlohmann::json(path.attribute->to_string()) : nlohmann::json(nullptr);
  props["scale"] = path.scale ? scale_to_json(*path.scale) : nlohmann::json(nullptr);
  props["segment_values"] = std::move(values);
  props["segment_colors"] = std::move(colors);
  props["segment_in_window"] = std::move(in_window);

  return {{"type", "Feature"},
          {"geometry", {{"type", "LineString"}, {"coordinates", std::move(coords)}}},
          {"properties", std::move(props)}};
}

nlohmann::json export_geojson(const ulog::FlightLog& log, const model::HierarchyConfig& config,
                              const EnrichOptions& options) {
  nlohmann::json features = nlohmann::json::array();
  for (auto layer : {model::PathLayer::Recorded, model::PathLayer::Estimated, model::PathLayer::Setpoints}) {
    const auto path = enrich_layer(log, config, layer, options);
    if (!path || path->samples.size() < 2) continue;
    features.push_back(path_feature(*path));
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

}  // namespace skytrace::geo
