#include "skytrace/model/events.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "skytrace/model/series.hpp"

namespace skytrace::model {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::FlightModeChange:
      return "flight_mode_change";
    case EventKind::LoggedMessage:
      return "logged_message";
  }
  return "?";
}

std::vector<Event> extract_events(const ulog::FlightLog& log, const HierarchyConfig& config,
                                  const FlightModeTable& modes) {
  std::vector<Event> events;

  for (const AttributeRef& ref : config.flight_mode) {
    if (!resolves(log, ref)) continue;
    const TimeSeries series = get_series(log, ref);
    std::optional<std::string> previous;
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (!std::isfinite(series.values[i])) continue;
      const FlightMode mode = modes.lookup(static_cast<std::int64_t>(series.values[i]));
      if (previous == mode.label) continue;
      events.push_back({series.timestamps[i], EventKind::FlightModeChange, mode.label, mode.id, mode.failsafe});
      previous = mode.label;
    }
    break;
  }

  for (const ulog::LoggedText& text : log.logged_text()) {
    events.push_back({text.timestamp_us, EventKind::LoggedMessage, text.text, text.severity(), false});
  }

  std::stable_sort(events.begin(), events.end(),
                   [](const Event& a, const Event& b) { return a.timestamp_us < b.timestamp_us; });
  return events;
}

}  // namespace skytrace::model
