#pragma once

#include <cstddef>
#include <optional>
#include <utility>

#include "skytrace/geo/simplify.hpp"
#include "skytrace/model/series.hpp"

namespace skytrace::geo {

struct ChartReduceOptions {
  double width_px{1000.0};
  double height_px{150.0};
  double tolerance_px{kDefaultChartTolerancePx};
  std::size_t budget{kDefaultPointBudget};
  // Plot ranges; default to the series' own time span and finite value range.
  std::optional<model::TimeWindow> x_domain;
  std::optional<std::pair<double, double>> y_domain;
};

// Simplifies a series in chart pixel space. Tolerance 0 returns the series
// unchanged; otherwise non-finite points are dropped and the result holds
// at most `budget` points.
model::TimeSeries reduce_for_chart(const model::TimeSeries& series, const ChartReduceOptions& options = {});

}  // namespace skytrace::geo
