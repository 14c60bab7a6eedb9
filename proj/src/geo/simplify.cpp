#include "skytrace/geo/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace skytrace::geo {

namespace {

double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Indices (into `line`) surviving the radial pass over `candidates`.
std::vector<std::size_t> radial_pass(const Polyline& line, const std::vector<std::size_t>& candidates, double sq_tol) {
  std::vector<std::size_t> kept;
  if (candidates.empty()) return kept;
  std::size_t prev = candidates.front();
  kept.push_back(prev);
  for (std::size_t k = 1; k < candidates.size(); ++k) {
    const std::size_t i = candidates[k];
    if (squared_distance(line[i], line[prev]) > sq_tol) {
      kept.push_back(i);
      prev = i;
    }
  }
  if (prev != candidates.back()) kept.push_back(candidates.back());
  return kept;
}

std::vector<std::size_t> douglas_peucker_pass(const Polyline& line, const std::vector<std::size_t>& candidates,
                                              double sq_tol) {
  const std::size_t n = candidates.size();
  if (n <= 2) return candidates;
  std::vector<bool> keep(n, false);
  keep[0] = true;
  keep[n - 1] = true;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, n - 1}};
  while (!stack.empty()) {
    const auto [first, last] = stack.back();
    stack.pop_back();
    double max_sq = sq_tol;
    std::size_t index = first;
    const Point& a = line[candidates[first]];
    const Point& b = line[candidates[last]];
    for (std::size_t k = first + 1; k < last; ++k) {
      const double d = squared_segment_distance(line[candidates[k]], a, b);
      if (d > max_sq) {
        index = k;
        max_sq = d;
      }
    }
    if (max_sq > sq_tol) {
      keep[index] = true;
      if (index - first > 1) stack.emplace_back(first, index);
      if (last - index > 1) stack.emplace_back(index, last);
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (keep[k]) out.push_back(candidates[k]);
  }
  return out;
}

std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return idx;
}

Polyline gather(const Polyline& line, const std::vector<std::size_t>& idx) {
  Polyline out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(line[i]);
  return out;
}

}  // namespace

double squared_segment_distance(const Point& p, const Point& a, const Point& b) {
  double x = a.x;
  double y = a.y;
  double dx = b.x - x;
  double dy = b.y - y;
  if (dx != 0.0 || dy != 0.0) {
    const double t = ((p.x - x) * dx + (p.y - y) * dy) / (dx * dx + dy * dy);
    if (t > 1.0) {
      x = b.x;
      y = b.y;
    } else if (t > 0.0) {
      x += dx * t;
      y += dy * t;
    }
  }
  dx = p.x - x;
  dy = p.y - y;
  return dx * dx + dy * dy;
}

Polyline simplify_radial(const Polyline& line, double tolerance) {
  if (line.size() <= 2) return line;
  return gather(line, radial_pass(line, all_indices(line.size()), tolerance * tolerance));
}

Polyline simplify_douglas_peucker(const Polyline& line, double tolerance) {
  if (line.size() <= 2) return line;
  return gather(line, douglas_peucker_pass(line, all_indices(line.size()), tolerance * tolerance));
}

std::vector<std::size_t> simplify_indices(const Polyline& line, double tolerance, bool high_quality) {
  std::vector<std::size_t> idx = all_indices(line.size());
  if (line.size() <= 2 || !(tolerance > 0.0)) return idx;
  const double sq_tol = tolerance * tolerance;
  if (high_quality) return douglas_peucker_pass(line, idx, sq_tol);
  // Repeat until stable so a second call with the same tolerance is a no-op.
  for (;;) {
    std::vector<std::size_t> next = douglas_peucker_pass(line, radial_pass(line, idx, sq_tol), sq_tol);
    if (next.size() == idx.size()) return next;
    idx = std::move(next);
  }
}

Polyline simplify_polyline(const Polyline& line, double tolerance, bool high_quality) {
  return gather(line, simplify_indices(line, tolerance, high_quality));
}

std::vector<std::size_t> simplify_to_budget(const Polyline& line, double tolerance, std::size_t budget,
                                            bool high_quality) {
  budget = std::max<std::size_t>(budget, 2);
  std::vector<std::size_t> best = simplify_indices(line, tolerance, high_quality);
  if (best.size() <= budget) return best;

  double lo = std::max(tolerance, 0.0);
  double hi = lo > 0.0 ? lo * 2.0 : 1e-9;
  for (;;) {
    best = simplify_indices(line, hi, high_quality);
    if (best.size() <= budget || std::isinf(hi)) break;
    lo = hi;
    hi *= 2.0;
  }
  // Narrow towards the smallest tolerance that meets the budget.
  for (int iter = 0; iter < 40 && hi - lo > 1e-6 * hi; ++iter) {
    const double mid = lo + (hi - lo) / 2.0;
    auto candidate = simplify_indices(line, mid, high_quality);
    if (candidate.size() <= budget) {
      hi = mid;
      best = std::move(candidate);
    } else {
      lo = mid;
    }
  }
  return best;
}

}  // namespace skytrace::geo
