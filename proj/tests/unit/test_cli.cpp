#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "conformance.hpp"
#include "skytrace/model/attribute.hpp"
#include "skytrace/model/series.hpp"
#include "skytrace/ulog/parser.hpp"

using namespace skytrace;

namespace {

struct Run {
  int status{-1};
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("'") + SKYTRACE_CLI_PATH + "' " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string sample(const char* name) { return "'" + (skytrace::testing::data_dir() / name).string() + "'"; }

std::size_t line_count(const std::string& text) { return std::count(text.begin(), text.end(), '\n'); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("info counts match the parsed log") {
    const auto log = ulog::parse_log(ulog::read_file(skytrace::testing::data_dir() / "sample_small.ulg"));
    const auto messages = ulog::list_messages(log);
    std::size_t attributes = 0;
    for (const auto& m : messages) attributes += model::column_names(*m.schema).size() - 1;

    const auto text = run("info " + sample("sample_small.ulg"));
    REQUIRE(text.status == 0);
    CHECK(text.out.find("messages:    " + std::to_string(messages.size()) + "\n") != std::string::npos);
    CHECK(text.out.find("attributes:  " + std::to_string(attributes) + "\n") != std::string::npos);

    const auto js = run("info --json " + sample("sample_small.ulg"));
    REQUIRE(js.status == 0);
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["meta"]["message_count"] == messages.size());
    CHECK(j["meta"]["attribute_count"] == attributes);
    std::size_t nonempty = 0;
    for (const auto& m : j["messages"]) nonempty += m["records"].get<std::size_t>() > 0;
    CHECK(nonempty == messages.size());
  }

  TEST_CASE("export-csv writes one row per record") {
    const auto log = ulog::parse_log(ulog::read_file(skytrace::testing::data_dir() / "sample_small.ulg"));
    const auto* gps = log.find_series({"vehicle_gps_position", 0});
    REQUIRE(gps);
    const auto r = run("export-csv " + sample("sample_small.ulg") + " vehicle_gps_position");
    REQUIRE(r.status == 0);
    CHECK(line_count(r.out) == gps->size() + 1);
    CHECK(r.out.rfind("timestamp,", 0) == 0);

    const auto first = gps->timestamps()[0];
    const auto win = run("export-csv " + sample("sample_small.ulg") + " vehicle_gps_position --window " +
                         std::to_string(first) + ":" + std::to_string(first));
    REQUIRE(win.status == 0);
    CHECK(line_count(win.out) == 2);
  }

  TEST_CASE("export-geojson has one value per segment") {
    const auto r = run("export-geojson " + sample("sample_small.ulg") + " --attr battery");
    REQUIRE(r.status == 0);
    const auto fc = nlohmann::json::parse(r.out);
    CHECK(fc["type"] == "FeatureCollection");
    REQUIRE_FALSE(fc["features"].empty());
    for (const auto& f : fc["features"]) {
      CHECK(f["properties"]["segment_values"].size() + 1 == f["geometry"]["coordinates"].size());
    }
    CHECK(run("export-geojson " + sample("sample_small.ulg") + " --attr battery").out == r.out);
  }

  TEST_CASE("summarize and events") {
    const auto r = run("summarize " + sample("sample_small.ulg") + " battery_voltage");
    REQUIRE(r.status == 0);
    CHECK(r.out.find("count:") != std::string::npos);
    const auto e = run("events " + sample("sample_small.ulg"));
    CHECK(e.status == 0);
    CHECK_FALSE(e.out.empty());
  }

  TEST_CASE("exit codes") {
    CHECK(run("info /nonexistent/file.ulg").status == 1);
    CHECK(run("info '" + std::string(SKYTRACE_CONFIG_DIR) + "/hierarchy.yaml'").status == 1);
    CHECK(run("summarize " + sample("sample_small.ulg") + " nope:x").status == 2);
    CHECK(run("export-csv " + sample("sample_small.ulg") + " no_such_message").status == 2);
    CHECK(run("export-csv " + sample("sample_small.ulg") + " vehicle_gps_position --window 9:3").status == 3);
    CHECK(run("bogus").status != 0);
  }
}
