#include "skytrace/geo/enriched.hpp"

#include <algorithm>

#include "skytrace/geo/mercator.hpp"
#include "skytrace/geo/simplify.hpp"

namespace skytrace::geo {

namespace {

std::vector<GeoSample> simplify_at_zoom(const std::vector<GeoSample>& samples, double zoom) {
  Polyline line;
  line.reserve(samples.size());
  for (const GeoSample& s : samples) {
    const double lat = std::clamp(s.lat, -kMaxMercatorLatitude, kMaxMercatorLatitude);
    const WorldPoint p = to_pixels(project_web_mercator(lat, s.lon), zoom);
    line.push_back({p.x, p.y});
  }
  std::vector<GeoSample> out;
  for (std::size_t i : simplify_indices(line, kDefaultMapTolerancePx)) out.push_back(samples[i]);
  return out;
}

}  // namespace

std::optional<EnrichedPath> enrich_layer(const ulog::FlightLog& log, const model::HierarchyConfig& config,
                                         model::PathLayer layer, const EnrichOptions& options) {
  auto resolved = model::resolve_layer(log, config, layer);
  if (!resolved) return std::nullopt;

  EnrichedPath path;
  path.layer = std::move(*resolved);
  path.samples = build_trajectory(log, path.layer.source);
  if (options.zoom) path.samples = simplify_at_zoom(path.samples, *options.zoom);
  if (path.samples.size() >= 2) path.segments = segments(path.samples);

  if (options.attribute) {
    path.attribute = options.attribute;
    const model::TimeSeries series = model::get_series(log, *options.attribute);
    path.segments = align_attribute(std::move(path.segments), series);
    if (!series.empty()) path.scale = viz::scale_for_attribute(log, *options.attribute, options.scale_kind);
  }

  path.colors.reserve(path.segments.size());
  path.in_window.reserve(path.segments.size());
  for (const Segment& seg : path.segments) {
    path.colors.push_back(path.scale ? viz::map_value(*path.scale, seg.value) : viz::sequential_stops().front());
    path.in_window.push_back(!options.window || options.window->contains(seg.t_start_us));
  }
  return path;
}

}  // namespace skytrace::geo
