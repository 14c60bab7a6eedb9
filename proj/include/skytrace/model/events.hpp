#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skytrace/model/config.hpp"
#include "skytrace/ulog/flight_log.hpp"

namespace skytrace::model {

enum class EventKind { FlightModeChange, LoggedMessage };

const char* to_string(EventKind kind);

struct Event {
  std::uint64_t timestamp_us{0};
  EventKind kind{EventKind::LoggedMessage};
  std::string label;
  // Flight modes: the mode id. Logged messages: severity 0..7 (8 unknown).
  std::int64_t category_index{0};
  bool failsafe{false};  // flight-mode events entering a failsafe mode

  bool operator==(const Event&) const = default;
};

// Flight-mode change points (first sample always included, repeats
// collapsed) merged with every logged text message, sorted by time.
std::vector<Event> extract_events(const ulog::FlightLog& log, const HierarchyConfig& config = HierarchyConfig::defaults(),
                                  const FlightModeTable& modes = FlightModeTable::defaults());

}  // namespace skytrace::model
