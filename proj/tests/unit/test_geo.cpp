#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "checks.hpp"
#include "conformance.hpp"
#include "skytrace/error.hpp"
#include "skytrace/geo/chart.hpp"
#include "skytrace/geo/enriched.hpp"
#include "skytrace/geo/geojson.hpp"
#include "skytrace/geo/mercator.hpp"
#include "skytrace/geo/simplify.hpp"
#include "skytrace/geo/trajectory.hpp"
#include "skytrace/model/series.hpp"
#include "skytrace/ulog/parser.hpp"
#include "synthetic.hpp"
#include "ulog_writer.hpp"

using namespace skytrace;
using namespace skytrace::geo;
using skytrace::testing::Packer;
using skytrace::testing::ULogWriter;

namespace {

std::vector<GeoSample> line_samples(std::vector<std::uint64_t> times) {
  std::vector<GeoSample> out;
  for (std::size_t i = 0; i < times.size(); ++i) out.push_back({times[i], 47.0 + 0.001 * i, 8.0, std::nullopt});
  return out;
}

model::TimeSeries series_of(std::vector<std::uint64_t> t, std::vector<double> v) {
  model::TimeSeries s;
  s.attr = {"m", 0, "x"};
  s.timestamps = std::move(t);
  s.values = std::move(v);
  return s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidConfig;
}

}  // namespace

TEST_SUITE("geo") {
  TEST_CASE("trajectory from valid GPS records") {
    ULogWriter w(0);
    w.format("vehicle_gps_position", "uint64_t timestamp;int32_t lat;int32_t lon;int32_t alt;uint8_t fix_type;");
    w.add_logged(0, "vehicle_gps_position");
    w.data(0, Packer{}(std::uint64_t{5})(std::int32_t{0})(std::int32_t{0})(std::int32_t{0})(std::uint8_t{0}));
    for (std::uint64_t t : {30, 10, 20}) {
      w.data(0, Packer{}(t)(std::int32_t(470000000 + t))(std::int32_t{80000000})(std::int32_t{0})(std::uint8_t{3}));
    }
    const auto log = ulog::parse_log(w.bytes());
    const auto samples = build_trajectory(log, model::HierarchyConfig::defaults(), model::PathLayer::Recorded);
    REQUIRE(samples.size() == 3);
    CHECK(samples[0].timestamp_us == 10);
    CHECK(samples[2].timestamp_us == 30);
    CHECK(samples[2].lat == doctest::Approx(47.000003));
    CHECK(code_of([&] { build_trajectory(log, model::HierarchyConfig::defaults(), model::PathLayer::Estimated); }) ==
          ErrorCode::NoPosition);
  }

  TEST_CASE("segments chain consecutive samples") {
    CHECK(segments(line_samples({1, 2})).size() == 1);
    const auto segs = segments(line_samples({1, 2, 4, 8, 16}));
    REQUIRE(segs.size() == 4);
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) CHECK(segs[i].p_end == segs[i + 1].p_start);
    CHECK(segs.back().t_end_us == 16);
    CHECK(code_of([] { segments(line_samples({1})); }) == ErrorCode::DegenerateTrajectory);
    CHECK(code_of([] { segments(line_samples({1, 1})); }) == ErrorCode::DegenerateTrajectory);
  }

  TEST_CASE("LOCF alignment examples") {
    const auto segs = segments(line_samples({0, 10, 20}));
    const auto exact = align_attribute(segs, series_of({0, 10}, {3.0, 4.0}));
    CHECK(exact[0].value == 3.0);
    CHECK(exact[1].value == 4.0);
    const auto locf = align_attribute(segments(line_samples({5, 15})), series_of({0, 10}, {1.0, 2.0}));
    CHECK(locf[0].value == 1.0);
    const auto before = align_attribute(segments(line_samples({5, 15})), series_of({6, 10}, {1.0, 2.0}));
    CHECK_FALSE(before[0].value);
    const auto empty = align_attribute(segs, series_of({}, {}));
    CHECK_FALSE(empty[1].value);
  }

  TEST_CASE("LOCF equals a brute-force scan") {
    std::mt19937_64 rng(7);
    for (int c = 0; c < 500; ++c) {
      std::uniform_int_distribution<std::uint64_t> t(0, 200);
      std::vector<std::uint64_t> st(std::uniform_int_distribution<int>(0, 30)(rng));
      for (auto& v : st) v = t(rng);
      std::sort(st.begin(), st.end());
      std::vector<double> sv(st.size());
      for (auto& v : sv) v = std::uniform_real_distribution<double>(-5, 5)(rng);
      std::set<std::uint64_t> times;
      while (times.size() < 10) times.insert(t(rng));
      const auto segs = align_attribute(segments(line_samples({times.begin(), times.end()})), series_of(st, sv));
      for (const auto& s : segs) {
        std::optional<double> expect;
        for (std::size_t i = 0; i < st.size(); ++i) {
          if (st[i] <= s.t_start_us) expect = sv[i];
        }
        CHECK(s.value == expect);
      }
    }
  }

  TEST_CASE("window split") {
    const auto segs = segments(line_samples({0, 10, 20, 30}));
    const auto all = split_by_window(segs, model::TimeWindow::make(0, 30));
    CHECK(all.inside.size() == 3);
    CHECK(all.outside.empty());
    const auto none = split_by_window(segs, model::TimeWindow::make(100, 200));
    CHECK(none.inside.empty());
    CHECK(none.outside.size() == 3);
    const auto edge = split_by_window(segs, model::TimeWindow::make(11, 20));
    REQUIRE(edge.inside.size() == 1);
    CHECK(edge.inside[0].t_start_us == 20);
  }

  TEST_CASE("simplification examples") {
    const Polyline flat{{0, 0}, {1, 0}, {2, 0}};
    CHECK(simplify_polyline(flat, 0.0) == flat);
    CHECK(simplify_polyline(flat, 0.1) == Polyline{{0, 0}, {2, 0}});
    CHECK(simplify_polyline(flat, 0.1, false) == Polyline{{0, 0}, {2, 0}});
    const Polyline peak{{0, 0}, {1, 1}, {2, 0}};
    CHECK(simplify_polyline(peak, 2.0) == Polyline{{0, 0}, {2, 0}});
    CHECK(simplify_polyline(peak, 0.5) == peak);
    CHECK(squared_segment_distance({1, 1}, {0, 0}, {2, 0}) == 1.0);
    CHECK(squared_segment_distance({3, 0}, {0, 0}, {2, 0}) == 1.0);
    CHECK(simplify_radial(flat, 1.5) == Polyline{{0, 0}, {2, 0}});
  }

  TEST_CASE("simplification budget") {
    Polyline zigzag;
    for (int i = 0; i < 10000; ++i) zigzag.push_back({double(i), (i % 2) ? 10.0 : 0.0});
    const auto idx = simplify_to_budget(zigzag, 0.25, 100);
    CHECK(idx.size() <= 100);
    CHECK(idx.front() == 0);
    CHECK(idx.back() == zigzag.size() - 1);
    CHECK(simplify_to_budget(zigzag, 0.25, 0).size() == 2);
  }

  TEST_CASE("simplification and windowing properties") {
    const auto simp = skytrace::testing::check_simplification(200, 99);
    CHECK_MESSAGE(simp.ok(), (simp.failures.empty() ? simp.note : simp.failures.front()));
    const auto win = skytrace::testing::check_windowing(1000, 99);
    CHECK_MESSAGE(win.ok(), (win.failures.empty() ? win.note : win.failures.front()));
  }

  TEST_CASE("chart reduction") {
    std::vector<std::uint64_t> t;
    std::vector<double> v;
    for (int i = 0; i < 50000; ++i) {
      t.push_back(i * 4000);
      v.push_back(std::sin(i * 0.01) + ((i % 7) ? 0.0 : 0.3));
    }
    v[17] = std::nan("");
    const auto s = series_of(t, v);
    ChartReduceOptions exact;
    exact.tolerance_px = 0.0;
    CHECK(reduce_for_chart(s, exact) == s);
    const auto reduced = reduce_for_chart(s);
    CHECK(reduced.size() <= kDefaultPointBudget);
    CHECK(reduced.timestamps.front() == 0);
    CHECK(reduced.timestamps.back() == t.back());
    for (double x : reduced.values) CHECK(std::isfinite(x));
    const auto budget = skytrace::testing::check_chart_budget();
    CHECK_MESSAGE(budget.ok(), (budget.failures.empty() ? budget.note : budget.failures.front()));
  }

  TEST_CASE("web mercator") {
    const auto c = project_web_mercator(0, 0);
    CHECK(c.x == doctest::Approx(0.5));
    CHECK(c.y == doctest::Approx(0.5));
    const auto e = project_web_mercator(0, 180);
    CHECK(e.x == doctest::Approx(1.0));
    CHECK(e.y == doctest::Approx(0.5));
    const auto n = project_web_mercator(kMaxMercatorLatitude, 0);
    CHECK(n.x == doctest::Approx(0.5));
    CHECK(std::abs(n.y) < 1e-8);
    CHECK(code_of([] { project_web_mercator(85.06, 0); }) == ErrorCode::LatitudeOutOfRange);
    CHECK(code_of([] { project_web_mercator(0, 180.5); }) == ErrorCode::LatitudeOutOfRange);
    const auto px = to_pixels(c, 1);
    CHECK(px.x == 256.0);
    CHECK(px.y == 256.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lat(-kMaxMercatorLatitude, kMaxMercatorLatitude), lon(-180, 180);
    for (int i = 0; i < 10000; ++i) {
      const double a = lat(rng), b = lon(rng);
      const auto back = unproject_web_mercator(project_web_mercator(a, b));
      CHECK(std::abs(back.lat - a) < 1e-9);
      CHECK(std::abs(back.lon - b) < 1e-9);
    }
  }

  TEST_CASE("enriched layers and geojson") {
    const auto log = ulog::parse_log(skytrace::testing::rc_loss_log());
    const auto& config = model::HierarchyConfig::defaults();
    EnrichOptions options;
    options.attribute = model::AttributeRef{"battery_status", 0, "remaining"};
    options.window = model::TimeWindow::make(10'000'000, 20'000'000);
    const auto path = enrich_layer(log, config, model::PathLayer::Recorded, options);
    REQUIRE(path);
    CHECK(path->segments.size() + 1 == path->samples.size());
    CHECK(path->colors.size() == path->segments.size());
    CHECK(path->in_window.size() == path->segments.size());
    CHECK(std::count(path->in_window.begin(), path->in_window.end(), true) > 0);
    CHECK(std::count(path->in_window.begin(), path->in_window.end(), false) > 0);
    REQUIRE(path->scale);
    const auto series = model::get_series(log, *options.attribute);
    const auto [lo, hi] = std::minmax_element(series.values.begin(), series.values.end());
    CHECK(path->scale->domain_min() == *lo);
    CHECK(path->scale->domain_max() == *hi);

    EnrichOptions zoomed = options;
    zoomed.zoom = 3.0;
    const auto coarse = enrich_layer(log, config, model::PathLayer::Recorded, zoomed);
    REQUIRE(coarse);
    CHECK(coarse->samples.size() < path->samples.size());
    CHECK(coarse->samples.front() == path->samples.front());
    CHECK(coarse->samples.back() == path->samples.back());

    const auto fc = export_geojson(log, config, options);
    CHECK(fc["type"] == "FeatureCollection");
    bool recorded = false;
    for (const auto& f : fc["features"]) {
      CHECK(f["geometry"]["type"] == "LineString");
      const auto n = f["geometry"]["coordinates"].size();
      CHECK(f["properties"]["segment_values"].size() == n - 1);
      CHECK(f["properties"]["segment_colors"].size() == n - 1);
      if (f["properties"]["layer"] == "recorded") {
        recorded = true;
        CHECK(f["geometry"]["coordinates"][0][0].get<double>() == doctest::Approx(path->samples[0].lon));
      }
      CHECK(f["properties"]["layer"] != "setpoints");
    }
    CHECK(recorded);
    CHECK(export_geojson(log, config, options) == fc);
  }
}
