#pragma once

#include <json.hpp>

#include "skytrace/geo/enriched.hpp"

namespace skytrace::geo {

// FeatureCollection with one LineString feature per layer that has at
// least two samples. Coordinates are [lon, lat(, alt)]; per-segment values,
// colors and window flags are parallel property arrays.
nlohmann::json export_geojson(const ulog::FlightLog& log, const model::HierarchyConfig& config,
                              const EnrichOptions& options = {});

nlohmann::json path_feature(const EnrichedPath& path);

// {kind, domain | categories, stops}
nlohmann::json scale_to_json(const viz::ColorScale& scale);

}  // namespace skytrace::geo
