#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "skytrace/model/config.hpp"
#include "skytrace/ulog/flight_log.hpp"

namespace skytrace::model {

// One decoded position sample, degrees and meters.
struct GeoSample {
  std::uint64_t timestamp_us{0};
  double lat{0.0};
  double lon{0.0};
  std::optional<double> alt_m;

  bool operator==(const GeoSample&) const = default;
};

struct ResolvedLayer {
  PathLayer layer{PathLayer::Recorded};
  PositionSource source;
  std::size_t record_count{0};  // 0: subscribed but never logged

  bool empty() const { return record_count == 0; }
};

// The three position layers of the command hierarchy; absent layers are
// not present in the log at all.
struct PathHierarchy {
  std::optional<ResolvedLayer> recorded;
  std::optional<ResolvedLayer> estimated;
  std::optional<ResolvedLayer> setpoints;

  const std::optional<ResolvedLayer>& layer(PathLayer which) const;
};

// First candidate source of a layer whose columns exist in the log.
std::optional<ResolvedLayer> resolve_layer(const ulog::FlightLog& log, const HierarchyConfig& config, PathLayer which);

PathHierarchy extract_hierarchy(const ulog::FlightLog& log, const HierarchyConfig& config);

// Decodes a layer into time-sorted samples, dropping invalid fixes (zero
// lat/lon, low fix type, cleared valid flag, out-of-range coordinates) and
// repeated timestamps.
std::vector<GeoSample> decode_positions(const ulog::FlightLog& log, const PositionSource& source);

}  // namespace skytrace::model
