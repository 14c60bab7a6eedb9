#include "skytrace/geo/mercator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "skytrace/error.hpp"

namespace skytrace::geo {

namespace {
constexpr double kDegToRad = std::numbers::pi / 180.0;
}

WorldPoint project_web_mercator(double lat_deg, double lon_deg) {
  if (!(std::abs(lat_deg) <= kMaxMercatorLatitude)) {
    throw Error(ErrorCode::LatitudeOutOfRange, "latitude " + std::to_string(lat_deg) + " outside Web Mercator range");
  }
  if (!(std::abs(lon_deg) <= 180.0)) {
    throw Error(ErrorCode::LatitudeOutOfRange, "longitude " + std::to_string(lon_deg) + " outside [-180, 180]");
  }
  const double phi = lat_deg * kDegToRad;
  const double x = (lon_deg + 180.0) / 360.0;
  const double y = 0.5 - std::log(std::tan(std::numbers::pi / 4.0 + phi / 2.0)) / (2.0 * std::numbers::pi);
  return {x, y};
}

LatLon unproject_web_mercator(const WorldPoint& p) {
  const double lon = p.x * 360.0 - 180.0;
  const double lat = std::atan(std::sinh(std::numbers::pi * (1.0 - 2.0 * p.y))) / kDegToRad;
  return {lat, lon};
}

WorldPoint to_pixels(const WorldPoint& p, double zoom) {
  const double scale = kTileSize * std::exp2(zoom);
  return {p.x * scale, p.y * scale};
}

}  // namespace skytrace::geo
