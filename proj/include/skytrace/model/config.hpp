#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skytrace/model/attribute.hpp"

namespace skytrace::model {

// Where one position layer lives in the log. Stored coordinates are
// multiplied by the scales to get degrees and meters.
struct PositionSource {
  AttributeRef lat;
  AttributeRef lon;
  std::optional<AttributeRef> alt;
  std::optional<AttributeRef> fix_type;  // samples need fix_type >= min_fix_type
  std::optional<AttributeRef> valid;     // samples need valid != 0
  double position_scale{1.0};
  double alt_scale{1.0};
  std::int64_t min_fix_type{3};
};

enum class PathLayer { Recorded, Estimated, Setpoints };

const char* to_string(PathLayer layer);
std::optional<PathLayer> parse_path_layer(std::string_view name);

// Data-driven mapping of the command hierarchy and well-known attributes
// onto message names. Each entry lists candidates; the first one present in
// a log wins, so one file covers several firmware generations.
struct HierarchyConfig {
  std::vector<PositionSource> recorded;
  std::vector<PositionSource> estimated;
  std::vector<PositionSource> setpoints;
  std::vector<AttributeRef> flight_mode;
  std::map<std::string, std::vector<AttributeRef>, std::less<>> aliases;

  const std::vector<PositionSource>& layer(PathLayer which) const;

  static HierarchyConfig parse(std::string_view yaml);
  static HierarchyConfig load(const std::filesystem::path& path);
  static const HierarchyConfig& defaults();
};

struct FlightMode {
  std::int64_t id{0};
  std::string label;
  bool failsafe{false};  // automatic safety / landing behavior
};

// Flight-mode id -> label table. Unknown ids get a generated label.
class FlightModeTable {
 public:
  FlightModeTable() = default;
  explicit FlightModeTable(std::vector<FlightMode> modes);

  FlightMode lookup(std::int64_t id) const;
  const std::map<std::int64_t, FlightMode>& modes() const { return modes_; }

  static FlightModeTable parse(std::string_view yaml);
  static FlightModeTable load(const std::filesystem::path& path);
  static const FlightModeTable& defaults();

 private:
  std::map<std::int64_t, FlightMode> modes_;
};

// First alias candidate (or a literal "message:field" ref) that resolves.
std::optional<AttributeRef> resolve_alias(const ulog::FlightLog& log, const HierarchyConfig& config,
                                          std::string_view name_or_ref);

}  // namespace skytrace::model
