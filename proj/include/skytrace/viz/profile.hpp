#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skytrace/model/attribute.hpp"
#include "skytrace/ulog/flight_log.hpp"

namespace skytrace::viz {

// "message[/instance]:field" where message and field may use * and ?
// wildcards and the instance may be "*". Without an instance only
// instance 0 matches.
struct AttributePattern {
  std::string message;
  std::optional<std::uint8_t> multi_id{0};  // nullopt: any instance
  std::string field;

  static std::optional<AttributePattern> parse(std::string_view text);
  std::string to_string() const;
  bool operator==(const AttributePattern&) const = default;
};

bool glob_match(std::string_view pattern, std::string_view text);

struct ProfileEntry {
  AttributePattern pattern;
  std::string label;  // e.g. "setpoint", "estimated", "recorded"
  std::string unit;
  double scale{1.0};  // stored value * scale = value in `unit`
};

struct ProfileGroup {
  std::string title;
  bool shared_scale{true};
  std::vector<ProfileEntry> entries;
};

// Curated ordered list of chart groups for the overview tab.
struct OverviewProfile {
  std::vector<ProfileGroup> groups;

  // Throws Error(InvalidConfig), including when a shared-scale group mixes units.
  static OverviewProfile parse(std::string_view yaml);
  static OverviewProfile load(const std::filesystem::path& path);
  static const OverviewProfile& defaults();
};

enum class RenderAs { Chart, ConstantRow };

struct ChartSeries {
  model::AttributeRef ref;
  std::string label;
  std::string unit;
  double scale{1.0};
};

struct ChartSpec {
  std::string title;
  std::vector<ChartSeries> series;  // never empty
  RenderAs render_as{RenderAs::Chart};
  bool shared_scale{true};
  // One scaled value per series when render_as == ConstantRow.
  std::vector<double> constant_values;

  std::string constant_text() const;
};

// Resolves each group against the log. Groups with no matching non-empty
// series are dropped; groups whose series are all constant become rows.
std::vector<ChartSpec> resolve_profile(const OverviewProfile& profile, const ulog::FlightLog& log);

}  // namespace skytrace::viz
