#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "skytrace/model/attribute.hpp"
#include "skytrace/ulog/flight_log.hpp"

namespace skytrace::model {

struct TimeSeries {
  AttributeRef attr;
  std::vector<std::uint64_t> timestamps;  // non-decreasing
  std::vector<double> values;

  std::size_t size() const { return timestamps.size(); }
  bool empty() const { return timestamps.empty(); }
  bool operator==(const TimeSeries&) const;
};

// Points of one attribute, optionally restricted to an inclusive window.
// Throws Error(UnknownAttribute) when `attr` does not resolve.
TimeSeries get_series(const ulog::FlightLog& log, const AttributeRef& attr,
                      const std::optional<TimeWindow>& window = std::nullopt);

// Window filter over an already extracted series. A nullopt window keeps all.
TimeSeries filter_window(const TimeSeries& series, const std::optional<TimeWindow>& window);

// The shared value when every point has the same value (NaN equals NaN).
// Throws Error(EmptySeries).
std::optional<double> detect_constant(const TimeSeries& series);

struct Summary {
  // Over finite values only; absent when there are none.
  std::optional<double> min;
  std::optional<double> max;
  std::optional<double> mean;
  std::size_t count{0};      // all points
  std::size_t nan_count{0};  // NaN and +-Inf points
};

// Throws Error(EmptySeries).
Summary summarize(const TimeSeries& series);

}  // namespace skytrace::model
