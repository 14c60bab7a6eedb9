#pragma once

#include <json.hpp>
#include <vector>

#include "skytrace/geo/enriched.hpp"
#include "skytrace/model/events.hpp"
#include "skytrace/model/meta.hpp"
#include "skytrace/model/series.hpp"
#include "skytrace/viz/profile.hpp"

// JSON wire format. Timestamps are integer microseconds, series are
// parallel arrays, non-finite numbers are null.
namespace skytrace::service {

nlohmann::json meta_json(const model::FlightMeta& meta);

// Every subscribed (message, instance), including ones with zero records.
nlohmann::json messages_json(const ulog::FlightLog& log);

// {attr, timestamps, values, total_points}
nlohmann::json series_json(const model::TimeSeries& series, std::size_t total_points);

nlohmann::json trajectory_json(const geo::EnrichedPath& path);

nlohmann::json events_json(const std::vector<model::Event>& events);

nlohmann::json overview_json(const std::vector<viz::ChartSpec>& charts);

nlohmann::json error_json(const std::string& error, const std::string& detail);

}  // namespace skytrace::service
