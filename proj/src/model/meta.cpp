#include "skytrace/model/meta.hpp"

#include <algorithm>
#include <limits>

#include "skytrace/model/hierarchy.hpp"

namespace skytrace::model {

FlightMeta flight_meta(const ulog::FlightLog& log, const HierarchyConfig& config) {
  FlightMeta meta;
  meta.truncated = log.truncated();
  std::uint64_t lo = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t hi = 0;
  for (const auto& [key, series] : log.series()) {
    if (series.size() == 0) continue;
    ++meta.message_count;
    meta.attribute_count += series.columns().size() - 1;
    const auto ts = series.timestamps();
    lo = std::min(lo, ts.front());
    hi = std::max(hi, ts.back());
    meta.duration_us = std::max(meta.duration_us, ts.back() - ts.front());
  }
  if (meta.message_count > 0) {
    meta.start_us = lo;
    meta.end_us = hi;
  }
  if (auto layer = resolve_layer(log, config, PathLayer::Recorded)) {
    const auto samples = decode_positions(log, layer->source);
    if (!samples.empty()) meta.reference = GeoReference{samples.front().lat, samples.front().lon};
  }
  return meta;
}

}  // namespace skytrace::model
