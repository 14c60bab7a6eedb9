#include "skytrace/model/hierarchy.hpp"

#include <cmath>

#include "skytrace/model/series.hpp"

namespace skytrace::model {

namespace {

// Fixed-point scales like 1e-7 are applied as a division by the exact
// integer 1e7 so decoded degrees are correctly rounded.
double apply_scale(double stored, double scale) {
  const double inverse = 1.0 / scale;
  const double rounded = std::round(inverse);
  if (scale < 1.0 && rounded != 0.0 && std::abs(inverse - rounded) <= 1e-9 * rounded) return stored / rounded;
  return stored * scale;
}

}  // namespace

const std::optional<ResolvedLayer>& PathHierarchy::layer(PathLayer which) const {
  switch (which) {
    case PathLayer::Recorded:
      return recorded;
    case PathLayer::Estimated:
      return estimated;
    case PathLayer::Setpoints:
      return setpoints;
  }
  return recorded;
}

std::optional<ResolvedLayer> resolve_layer(const ulog::FlightLog& log, const HierarchyConfig& config,
                                           PathLayer which) {
  for (const PositionSource& source : config.layer(which)) {
    if (!resolves(log, source.lat) || !resolves(log, source.lon)) continue;
    ResolvedLayer out;
    out.layer = which;
    out.source = source;
    // Optional columns only count when this log has them.
    if (out.source.alt && !resolves(log, *out.source.alt)) out.source.alt.reset();
    if (out.source.fix_type && !resolves(log, *out.source.fix_type)) out.source.fix_type.reset();
    if (out.source.valid && !resolves(log, *out.source.valid)) out.source.valid.reset();
    const ulog::MessageSeries* series = log.find_series(source.lat.key());
    out.record_count = series == nullptr ? 0 : series->size();
    return out;
  }
  return std::nullopt;
}

PathHierarchy extract_hierarchy(const ulog::FlightLog& log, const HierarchyConfig& config) {
  PathHierarchy h;
  h.recorded = resolve_layer(log, config, PathLayer::Recorded);
  h.estimated = resolve_layer(log, config, PathLayer::Estimated);
  h.setpoints = resolve_layer(log, config, PathLayer::Setpoints);
  return h;
}

std::vector<GeoSample> decode_positions(const ulog::FlightLog& log, const PositionSource& source) {
  std::vector<GeoSample> out;
  if (!resolves(log, source.lat) || !resolves(log, source.lon)) return out;
  const TimeSeries lat = get_series(log, source.lat);
  const TimeSeries lon = get_series(log, source.lon);
  std::optional<TimeSeries> alt;
  std::optional<TimeSeries> fix;
  std::optional<TimeSeries> valid;
  if (source.alt && resolves(log, *source.alt)) alt = get_series(log, *source.alt);
  if (source.fix_type && resolves(log, *source.fix_type)) fix = get_series(log, *source.fix_type);
  if (source.valid && resolves(log, *source.valid)) valid = get_series(log, *source.valid);

  // All columns come from the same message when lat/lon share one; guard
  // against mixed-message configs by only using aligned columns.
  auto aligned = [&](const std::optional<TimeSeries>& s) { return s && s->timestamps == lat.timestamps; };
  const bool use_alt = aligned(alt);
  const bool use_fix = aligned(fix);
  const bool use_valid = aligned(valid);
  if (lon.timestamps != lat.timestamps) return out;

  out.reserve(lat.size());
  for (std::size_t i = 0; i < lat.size(); ++i) {
    if (use_fix && !(fix->values[i] >= static_cast<double>(source.min_fix_type))) continue;
    if (use_valid && valid->values[i] == 0.0) continue;
    const double la = apply_scale(lat.values[i], source.position_scale);
    const double lo = apply_scale(lon.values[i], source.position_scale);
    if (!std::isfinite(la) || !std::isfinite(lo)) continue;
    if (la == 0.0 && lo == 0.0) continue;
    if (la < -90.0 || la > 90.0 || lo <= -180.0 || lo > 180.0) continue;
    const std::uint64_t t = lat.timestamps[i];
    if (!out.empty() && out.back().timestamp_us == t) continue;
    GeoSample s{t, la, lo, std::nullopt};
    if (use_alt && std::isfinite(alt->values[i])) s.alt_m = apply_scale(alt->values[i], source.alt_scale);
    out.push_back(s);
  }
  return out;
}

}  // namespace skytrace::model
