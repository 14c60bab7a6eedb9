#include "skytrace/geo/chart.hpp"

#include <cmath>

namespace skytrace::geo {

model::TimeSeries reduce_for_chart(const model::TimeSeries& series, const ChartReduceOptions& options) {
  if (!(options.tolerance_px > 0.0)) return series;

  model::TimeSeries finite;
  finite.attr = series.attr;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (std::isfinite(series.values[i])) {
      finite.timestamps.push_back(series.timestamps[i]);
      finite.values.push_back(series.values[i]);
    }
  }
  if (finite.size() <= 2) return finite;

  double t0 = static_cast<double>(finite.timestamps.front());
  double t1 = static_cast<double>(finite.timestamps.back());
  if (options.x_domain) {
    t0 = static_cast<double>(options.x_domain->start_us);
    t1 = static_cast<double>(options.x_domain->end_us);
  }
  double v0 = finite.values.front();
  double v1 = v0;
  if (options.y_domain) {
    std::tie(v0, v1) = *options.y_domain;
  } else {
    for (double v : finite.values) {
      v0 = std::min(v0, v);
      v1 = std::max(v1, v);
    }
  }
  const double sx = t1 > t0 ? options.width_px / (t1 - t0) : 0.0;
  const double sy = v1 > v0 ? options.height_px / (v1 - v0) : 0.0;

  Polyline line;
  line.reserve(finite.size());
  for (std::size_t i = 0; i < finite.size(); ++i) {
    line.push_back({(static_cast<double>(finite.timestamps[i]) - t0) * sx, (finite.values[i] - v0) * sy});
  }
  const auto keep = simplify_to_budget(line, options.tolerance_px, options.budget);

  model::TimeSeries out;
  out.attr = series.attr;
  out.timestamps.reserve(keep.size());
  out.values.reserve(keep.size());
  for (std::size_t i : keep) {
    out.timestamps.push_back(finite.timestamps[i]);
    out.values.push_back(finite.values[i]);
  }
  return out;
}

}  // namespace skytrace::geo
