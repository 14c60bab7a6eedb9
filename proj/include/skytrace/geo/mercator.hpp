#pragma once

namespace skytrace::geo {

inline constexpr double kMaxMercatorLatitude = 85.05112878;
inline constexpr double kTileSize = 256.0;

struct WorldPoint {
  double x{0.0};  // 0 at lon -180, 1 at lon 180
  double y{0.0};  // 0 at the northern limit, 1 at the southern limit
};

// Normalized Web-Mercator coordinates. Throws Error(LatitudeOutOfRange)
// when |lat| exceeds kMaxMercatorLatitude or lon is outside [-180, 180].
WorldPoint project_web_mercator(double lat_deg, double lon_deg);

struct LatLon {
  double lat{0.0};
  double lon{0.0};
};

LatLon unproject_web_mercator(const WorldPoint& p);

// Pixel coordinates at a zoom level (256 * 2^zoom pixels per world).
WorldPoint to_pixels(const WorldPoint& p, double zoom);

}  // namespace skytrace::geo
