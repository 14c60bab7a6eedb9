#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skytrace/ulog/flight_log.hpp"

namespace skytrace::model {

// Names one attribute column: message, instance and field.
//
// Text form is "message:field" or "message/instance:field", e.g.
// "battery_status/1:voltage_v". Besides stored columns, a field may name a
// derived Euler angle of a quaternion array: "roll(q)", "pitch(q)", "yaw(q_d)".
struct AttributeRef {
  std::string message;
  std::uint8_t multi_id{0};
  std::string field;

  std::string to_string() const;
  static std::optional<AttributeRef> parse(std::string_view text);

  ulog::SeriesKey key() const { return {message, multi_id}; }
  auto operator<=>(const AttributeRef&) const = default;
  bool operator==(const AttributeRef&) const = default;
};

// Inclusive on both ends.
struct TimeWindow {
  std::uint64_t start_us{0};
  std::uint64_t end_us{0};

  // Throws Error(InvalidWindow) when start > end.
  static TimeWindow make(std::uint64_t start_us, std::uint64_t end_us);

  bool contains(std::uint64_t t) const { return start_us <= t && t <= end_us; }
  bool operator==(const TimeWindow&) const = default;
};

// Empty optional when the windows do not overlap.
std::optional<TimeWindow> intersect(const TimeWindow& a, const TimeWindow& b);

// Whether the schema has a stored column with this name ("q[2]", "current.lat").
bool has_column(const ulog::MessageSchema& schema, std::string_view column);

// Whether `ref` names a stored or derivable column of a subscribed message.
bool resolves(const ulog::FlightLog& log, const AttributeRef& ref);

// All stored column names of a schema in record order.
std::vector<std::string> column_names(const ulog::MessageSchema& schema);

}  // namespace skytrace::model
