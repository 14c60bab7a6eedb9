#include "skytrace/geo/trajectory.hpp"

#include <algorithm>

#include "skytrace/error.hpp"

namespace skytrace::geo {

std::vector<GeoSample> build_trajectory(const ulog::FlightLog& log, const model::PositionSource& source) {
  if (!model::resolves(log, source.lat) || !model::resolves(log, source.lon)) {
    throw Error(ErrorCode::NoPosition, "no position columns " + source.lat.to_string() + ", " + source.lon.to_string());
  }
  return model::decode_positions(log, source);
}

std::vector<GeoSample> build_trajectory(const ulog::FlightLog& log, const model::HierarchyConfig& config,
                                        model::PathLayer layer) {
  const auto resolved = model::resolve_layer(log, config, layer);
  if (!resolved) throw Error(ErrorCode::NoPosition, std::string("log has no ") + model::to_string(layer) + " path");
  return build_trajectory(log, resolved->source);
}

std::vector<Segment> segments(const std::vector<GeoSample>& samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::DegenerateTrajectory, "a trajectory needs at least two samples");
  }
  std::vector<Segment> out;
  out.reserve(samples.size() - 1);
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (samples[i].timestamp_us >= samples[i + 1].timestamp_us) {
      throw Error(ErrorCode::DegenerateTrajectory, "trajectory timestamps must strictly increase");
    }
    out.push_back({samples[i].timestamp_us, samples[i + 1].timestamp_us, samples[i], samples[i + 1], std::nullopt});
  }
  return out;
}

std::vector<Segment> align_attribute(std::vector<Segment> segs, const model::TimeSeries& series) {
  const auto& ts = series.timestamps;
  for (Segment& seg : segs) {
    const auto it = std::upper_bound(ts.begin(), ts.end(), seg.t_start_us);
    if (it == ts.begin()) {
      seg.value.reset();
    } else {
      seg.value = series.values[static_cast<std::size_t>(it - ts.begin()) - 1];
    }
  }
  return segs;
}

WindowSplit split_by_window(const std::vector<Segment>& segs, const model::TimeWindow& window) {
  WindowSplit out;
  for (const Segment& seg : segs) {
    (window.contains(seg.t_start_us) ? out.inside : out.outside).push_back(seg);
  }
  return out;
}

}  // namespace skytrace::geo
