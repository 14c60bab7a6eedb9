#pragma once

#include <cstddef>
#include <vector>

namespace skytrace::geo {

struct Point {
  double x{0.0};
  double y{0.0};
  bool operator==(const Point&) const = default;
};

using Polyline = std::vector<Point>;

inline constexpr double kDefaultChartTolerancePx = 0.25;
inline constexpr double kDefaultMapTolerancePx = 0.5;
inline constexpr std::size_t kDefaultPointBudget = 2000;

// Drops points closer than `tolerance` to the last kept point. The final
// point is always kept.
Polyline simplify_radial(const Polyline& line, double tolerance);

// Douglas-Peucker against the segment (not the infinite line) between
// chain endpoints.
Polyline simplify_douglas_peucker(const Polyline& line, double tolerance);

// Radial pre-pass followed by Douglas-Peucker, or Douglas-Peucker only when
// `high_quality`. Tolerance 0 (or fewer than three points) returns the
// input unchanged.
Polyline simplify_polyline(const Polyline& line, double tolerance, bool high_quality = true);

// Indices of the points simplify_polyline keeps.
std::vector<std::size_t> simplify_indices(const Polyline& line, double tolerance, bool high_quality = true);

// Simplifies with `tolerance`, raising it until at most `budget` points
// remain (budget below 2 is treated as 2).
std::vector<std::size_t> simplify_to_budget(const Polyline& line, double tolerance, std::size_t budget,
                                            bool high_quality = true);

// Squared distance from p to the segment a-b.
double squared_segment_distance(const Point& p, const Point& a, const Point& b);

}  // namespace skytrace::geo
