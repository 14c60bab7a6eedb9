#pragma once

#include <optional>
#include <vector>

#include "skytrace/geo/trajectory.hpp"
#include "skytrace/viz/color.hpp"

namespace skytrace::geo {

// One path layer with an attribute encoded per segment.
struct EnrichedPath {
  model::ResolvedLayer layer;
  std::vector<GeoSample> samples;
  std::vector<Segment> segments;  // empty when fewer than two samples
  std::optional<model::AttributeRef> attribute;
  std::optional<viz::ColorScale> scale;
  std::vector<viz::Rgb> colors;  // one per segment
  std::vector<bool> in_window;   // one per segment; all true without a window
};

struct EnrichOptions {
  std::optional<model::AttributeRef> attribute;
  std::optional<model::TimeWindow> window;
  viz::ScaleKind scale_kind{viz::ScaleKind::Sequential};
  // Simplify the path at this map zoom (kDefaultMapTolerancePx in
  // Web-Mercator pixels) before segmenting.
  std::optional<double> zoom;
};

// nullopt when the layer is absent from the log.
std::optional<EnrichedPath> enrich_layer(const ulog::FlightLog& log, const model::HierarchyConfig& config,
                                         model::PathLayer layer, const EnrichOptions& options = {});

}  // namespace skytrace::geo
