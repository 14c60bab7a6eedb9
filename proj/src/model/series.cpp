#include "skytrace/model/series.hpp"

#include <algorithm>
#include <cmath>

#include "skytrace/error.hpp"
#include "skytrace/model/derived.hpp"

namespace skytrace::model {

namespace {

bool same_value(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

}  // namespace

std::optional<DerivedField> parse_derived(std::string_view field) {
  if (field.size() < 4 || field.back() != ')') return std::nullopt;
  const auto open = field.find('(');
  if (open == std::string_view::npos || open + 2 > field.size() - 1) return std::nullopt;
  std::string_view fn = field.substr(0, open);
  std::string source(field.substr(open + 1, field.size() - open - 2));
  if (fn == "roll") return DerivedField{EulerAxis::Roll, source};
  if (fn == "pitch") return DerivedField{EulerAxis::Pitch, source};
  if (fn == "yaw") return DerivedField{EulerAxis::Yaw, source};
  return std::nullopt;
}

double euler_angle(EulerAxis axis, double w, double x, double y, double z) {
  switch (axis) {
    case EulerAxis::Roll:
      return std::atan2(2.0 * (w * x + y * z), 1.0 - 2.0 * (x * x + y * y));
    case EulerAxis::Pitch:
      return std::asin(std::clamp(2.0 * (w * y - z * x), -1.0, 1.0));
    case EulerAxis::Yaw:
      return std::atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z));
  }
  return 0.0;
}

bool TimeSeries::operator==(const TimeSeries& other) const {
  return attr == other.attr && timestamps == other.timestamps && values.size() == other.values.size() &&
         std::equal(values.begin(), values.end(), other.values.begin(), same_value);
}

TimeSeries get_series(const ulog::FlightLog& log, const AttributeRef& attr, const std::optional<TimeWindow>& window) {
  if (!resolves(log, attr)) throw Error(ErrorCode::UnknownAttribute, "unknown attribute " + attr.to_string());

  TimeSeries out;
  out.attr = attr;
  const ulog::MessageSeries* series = log.find_series(attr.key());
  if (series == nullptr) return out;  // subscribed, never logged

  const auto ts = series->timestamps();
  std::size_t first = 0;
  std::size_t last = ts.size();
  if (window) {
    first = static_cast<std::size_t>(std::lower_bound(ts.begin(), ts.end(), window->start_us) - ts.begin());
    last = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), window->end_us) - ts.begin());
    if (last < first) last = first;
  }
  out.timestamps.assign(ts.begin() + static_cast<std::ptrdiff_t>(first), ts.begin() + static_cast<std::ptrdiff_t>(last));
  out.values.reserve(last - first);

  if (const ulog::Column* column = series->find_column(attr.field)) {
    for (std::size_t i = first; i < last; ++i) out.values.push_back(column->as_double(i));
    return out;
  }
  const DerivedField derived = *parse_derived(attr.field);
  const ulog::Column* q[4];
  for (int k = 0; k < 4; ++k) q[k] = series->find_column(derived.source + "[" + std::to_string(k) + "]");
  for (std::size_t i = first; i < last; ++i) {
    out.values.push_back(
        euler_angle(derived.axis, q[0]->as_double(i), q[1]->as_double(i), q[2]->as_double(i), q[3]->as_double(i)));
  }
  return out;
}

TimeSeries filter_window(const TimeSeries& series, const std::optional<TimeWindow>& window) {
  if (!window) return series;
  TimeSeries out;
  out.attr = series.attr;
  const auto first = std::lower_bound(series.timestamps.begin(), series.timestamps.end(), window->start_us);
  const auto last = std::upper_bound(first, series.timestamps.end(), window->end_us);
  const auto offset = first - series.timestamps.begin();
  out.timestamps.assign(first, last);
  out.values.assign(series.values.begin() + offset, series.values.begin() + (last - series.timestamps.begin()));
  return out;
}

std::optional<double> detect_constant(const TimeSeries& series) {
  if (series.empty()) throw Error(ErrorCode::EmptySeries, "series " + series.attr.to_string() + " has no points");
  const double v0 = series.values.front();
  for (double v : series.values) {
    if (!same_value(v, v0)) return std::nullopt;
  }
  return v0;
}

Summary summarize(const TimeSeries& series) {
  if (series.empty()) throw Error(ErrorCode::EmptySeries, "series " + series.attr.to_string() + " has no points");
  Summary s;
  s.count = series.size();
  double lo = 0.0;
  double hi = 0.0;
  double sum = 0.0;
  std::size_t finite = 0;
  for (double v : series.values) {
    if (!std::isfinite(v)) {
      ++s.nan_count;
      continue;
    }
    if (finite == 0) {
      lo = hi = v;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    sum += v;
    ++finite;
  }
  if (finite > 0) {
    s.min = lo;
    s.max = hi;
    s.mean = sum / static_cast<double>(finite);
  }
  return s;
}

}  // namespace skytrace::model
