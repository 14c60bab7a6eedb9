#pragma once

#include <cstdint>
#include <optional>

#include "skytrace/model/config.hpp"
#include "skytrace/ulog/flight_log.hpp"

namespace skytrace::model {

struct GeoReference {
  double lat{0.0};
  double lon{0.0};
  bool operator==(const GeoReference&) const = default;
};

struct FlightMeta {
  std::uint64_t start_us{0};     // earliest record timestamp over all series
  std::uint64_t end_us{0};       // latest record timestamp
  std::uint64_t duration_us{0};  // longest single-series span
  std::optional<GeoReference> reference;  // first valid recorded fix
  std::size_t message_count{0};
  std::size_t attribute_count{0};  // stored columns, timestamps excluded
  bool truncated{false};
};

FlightMeta flight_meta(const ulog::FlightLog& log, const HierarchyConfig& config = HierarchyConfig::defaults());

}  // namespace skytrace::model
