#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "skytrace/model/attribute.hpp"
#include "skytrace/model/config.hpp"
#include "skytrace/model/hierarchy.hpp"
#include "skytrace/model/series.hpp"

namespace skytrace::geo {

using model::GeoSample;

// Straight path between two consecutive samples.
struct Segment {
  std::uint64_t t_start_us{0};
  std::uint64_t t_end_us{0};
  GeoSample p_start;
  GeoSample p_end;
  std::optional<double> value;  // aligned attribute; nullopt = no data

  bool operator==(const Segment&) const = default;
};

// Decoded, time-sorted samples of one position source. Throws
// Error(NoPosition) when the source's lat/lon do not resolve; a subscribed
// message without valid fixes gives an empty list.
std::vector<GeoSample> build_trajectory(const ulog::FlightLog& log, const model::PositionSource& source);

// Same, picking the layer's source from the hierarchy config.
std::vector<GeoSample> build_trajectory(const ulog::FlightLog& log, const model::HierarchyConfig& config,
                                        model::PathLayer layer);

// n samples -> n-1 chained segments. Throws Error(DegenerateTrajectory)
// for fewer than two samples or timestamps that do not strictly increase.
std::vector<Segment> segments(const std::vector<GeoSample>& samples);

// Last observation at or before each segment's start (LOCF).
std::vector<Segment> align_attribute(std::vector<Segment> segs, const model::TimeSeries& series);

struct WindowSplit {
  std::vector<Segment> inside;
  std::vector<Segment> outside;
};

// A segment is inside iff its start lies in the (inclusive) window.
WindowSplit split_by_window(const std::vector<Segment>& segs, const model::TimeWindow& window);

}  // namespace skytrace::geo
