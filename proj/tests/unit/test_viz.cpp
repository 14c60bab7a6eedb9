#include <doctest.h>

#include <cmath>
#include <set>

#include "checks.hpp"
#include "conformance.hpp"
#include "skytrace/error.hpp"
#include "skytrace/ulog/parser.hpp"
#include "skytrace/viz/color.hpp"
#include "skytrace/viz/profile.hpp"
#include "ulog_writer.hpp"

using namespace skytrace;
using namespace skytrace::viz;
using skytrace::testing::Packer;
using skytrace::testing::ULogWriter;

namespace {

bool invalid_domain(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code() == ErrorCode::InvalidDomain;
  }
  return false;
}

bool invalid_config(std::string_view yaml) {
  try {
    OverviewProfile::parse(yaml);
  } catch (const Error& e) {
    return e.code() == ErrorCode::InvalidConfig;
  }
  return false;
}

}  // namespace

TEST_SUITE("viz") {
  TEST_CASE("sequential palette") {
    const std::vector<std::string> expected{"#f95e3f", "#e80936", "#91003e", "#691433", "#16132e"};
    std::vector<std::string> got;
    for (const auto& c : sequential_stops()) got.push_back(c.hex());
    CHECK(got == expected);
    const auto scale = make_scale(ScaleKind::Sequential, 0, 1);
    CHECK(scale.stops().size() == 5);
    CHECK(map_value(scale, 0.0).hex() == "#f95e3f");
    CHECK(map_value(scale, 0.5).hex() == "#91003e");
    CHECK(map_value(scale, 1.0).hex() == "#16132e");
    CHECK(map_value(scale, -3.0).hex() == "#f95e3f");
    CHECK(map_value(scale, 9.0).hex() == "#16132e");
    CHECK(map_value(scale, std::nan("")).hex() == "#9e9e9e");
    CHECK(map_value(scale, std::nullopt) == kNoDataColor);
    const auto report = skytrace::testing::check_colors();
    CHECK_MESSAGE(report.ok(), (report.failures.empty() ? report.note : report.failures.front()));
  }

  TEST_CASE("invalid domains") {
    CHECK(invalid_domain([] { make_scale(ScaleKind::Sequential, 3, 3); }));
    CHECK(invalid_domain([] { make_scale(ScaleKind::Sequential, 4, 3); }));
    CHECK(invalid_domain([] { make_scale(ScaleKind::Diverging, 0, INFINITY); }));
    CHECK(invalid_domain([] { make_scale(ScaleKind::Sequential, 0, 1, {Rgb{}}); }));
  }

  TEST_CASE("continuity") {
    for (auto kind : {ScaleKind::Sequential, ScaleKind::Diverging, ScaleKind::Cyclic}) {
      const auto scale = make_scale(kind, -2, 5);
      for (int i = 0; i < 7000; ++i) {
        const double v = -2 + i * 0.001;
        const auto a = map_value(scale, v);
        const auto b = map_value(scale, v + 1e-6);
        CHECK(std::abs(int(a.r) - int(b.r)) <= 1);
        CHECK(std::abs(int(a.g) - int(b.g)) <= 1);
        CHECK(std::abs(int(a.b) - int(b.b)) <= 1);
      }
    }
    CHECK(cyclic_stops().front() == cyclic_stops().back());
  }

  TEST_CASE("categorical scales") {
    const auto scale = make_categorical_scale({"Manual", "Position", "Land"});
    std::set<std::string> colors;
    for (const auto& label : scale.categories()) colors.insert(map_category(scale, label).hex());
    CHECK(colors.size() == 3);
    CHECK(map_value(scale, 1.0) == map_category(scale, "Position"));
    CHECK(map_category(scale, "Nope") == kNoDataColor);
    CHECK(Rgb::from_hex("16132e") == Rgb{0x16, 0x13, 0x2e});
    CHECK_THROWS_AS(Rgb::from_hex("#12345"), std::invalid_argument);
    CHECK(parse_scale_kind("diverging") == ScaleKind::Diverging);
    CHECK_FALSE(parse_scale_kind("rainbow"));
  }

  TEST_CASE("attribute patterns") {
    const auto p = AttributePattern::parse("battery_status/*:voltage_?");
    REQUIRE(p);
    CHECK_FALSE(p->multi_id);
    CHECK(p->to_string() == "battery_status/*:voltage_?");
    CHECK(AttributePattern::parse("gps:lat")->multi_id == 0);
    CHECK_FALSE(AttributePattern::parse("gps"));
    CHECK(glob_match("v?_*", "vx_abc"));
    CHECK(glob_match("*", ""));
    CHECK_FALSE(glob_match("v?", "v"));
    CHECK_FALSE(glob_match("a*b", "acbd"));
  }

  TEST_CASE("profile parsing") {
    CHECK(invalid_config("groups: [{title: A, shared_scale: true, entries: "
                         "[{ref: 'a:x', unit: m}, {ref: 'b:y', unit: V}]}]"));
    CHECK_FALSE(invalid_config("groups: [{title: A, shared_scale: false, entries: "
                               "[{ref: 'a:x', unit: m}, {ref: 'b:y', unit: V}]}]"));
    CHECK(invalid_config("groups: [{title: A, entries: [{ref: 'nocolon'}]}]"));
    CHECK(invalid_config("version: 7"));
    const auto& profile = OverviewProfile::defaults();
    REQUIRE_FALSE(profile.groups.empty());
    CHECK(profile.groups.front().title == "Altitude");
    CHECK(OverviewProfile::load(SKYTRACE_CONFIG_DIR "/overview.yaml").groups.size() == profile.groups.size());
  }

  TEST_CASE("resolve_profile") {
    ULogWriter w(0);
    w.format("const_msg", "uint64_t timestamp;float v;");
    w.format("wave", "uint64_t timestamp;float v;");
    w.add_logged(0, "const_msg");
    w.add_logged(1, "wave");
    for (std::uint64_t t = 1; t < 10; ++t) {
      w.data(0, Packer{}(t)(42.0f));
      w.data(1, Packer{}(t)(float(t)));
    }
    const auto log = ulog::parse_log(w.bytes());
    const auto profile = OverviewProfile::parse(
        "groups:\n"
        "  - {title: Missing, entries: [{ref: 'absent:v'}]}\n"
        "  - {title: Constant, entries: [{ref: 'const_msg:v'}]}\n"
        "  - {title: Wave, entries: [{ref: 'wave:v'}, {ref: 'wave:v'}, {ref: 'wav?:*'}]}\n");
    const auto specs = resolve_profile(profile, log);
    REQUIRE(specs.size() == 2);
    CHECK(specs[0].title == "Constant");
    CHECK(specs[0].render_as == RenderAs::ConstantRow);
    CHECK(specs[0].constant_text() == "42");
    CHECK(specs[1].title == "Wave");
    CHECK(specs[1].render_as == RenderAs::Chart);
    CHECK(specs[1].series.size() == 1);

    const auto real = ulog::parse_log(ulog::read_file(skytrace::testing::data_dir() / "sample_small.ulg"));
    const auto overview = resolve_profile(OverviewProfile::defaults(), real);
    for (const auto& spec : overview) CHECK_FALSE(spec.series.empty());
    const auto alt = std::find_if(overview.begin(), overview.end(), [](const ChartSpec& s) { return s.title == "Altitude"; });
    REQUIRE(alt != overview.end());
    std::set<std::string> labels;
    for (const auto& s : alt->series) labels.insert(s.label);
    CHECK(labels.contains("estimated"));
    CHECK(labels.contains("recorded (GPS)"));
  }
}
