#include "conformance.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <cstdlib>
#include <fstream>

#include "skytrace/ulog/parser.hpp"

namespace skytrace::testing {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

double parse_repr(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::strtod(s.c_str(), nullptr);
}

bool numbers_match(double mine, double theirs) {
  return same_bits(mine, theirs) || (std::isnan(mine) && std::isnan(theirs));
}

void compare_info(const ulog::FlightLog& log, const nlohmann::json& oracle, std::vector<std::string>& diffs) {
  std::size_t matched = 0;
  for (const auto& [key, value] : log.info()) {
    if (std::holds_alternative<std::vector<std::uint8_t>>(value)) continue;
    if (!oracle.contains(key)) {
      diffs.push_back("info '" + key + "' not in oracle");
      continue;
    }
    ++matched;
    const auto& expected = oracle.at(key);
    bool ok = false;
    if (const auto* s = std::get_if<std::string>(&value)) {
      ok = expected.is_string() && expected.get<std::string>() == *s;
    } else if (const auto* i = std::get_if<std::int64_t>(&value)) {
      ok = expected.is_number_integer() && expected.get<std::int64_t>() == *i;
    } else if (const auto* u = std::get_if<std::uint64_t>(&value)) {
      ok = expected.is_number_integer() && expected.get<std::uint64_t>() == *u;
    } else if (const auto* d = std::get_if<double>(&value)) {
      ok = expected.is_object() && numbers_match(*d, parse_repr(expected.at("float").get<std::string>()));
    }
    if (!ok) diffs.push_back("info '" + key + "' differs: oracle " + expected.dump());
  }
  if (matched != oracle.size()) {
    diffs.push_back("info key count " + std::to_string(matched) + " vs oracle " + std::to_string(oracle.size()));
  }
}

void compare_params(const ulog::FlightLog& log, const nlohmann::json& oracle, std::vector<std::string>& diffs) {
  if (log.parameters().size() != oracle.size()) {
    diffs.push_back("parameter count " + std::to_string(log.parameters().size()) + " vs oracle " +
                    std::to_string(oracle.size()));
  }
  for (const auto& [name, value] : log.parameters()) {
    if (!oracle.contains(name)) {
      diffs.push_back("parameter '" + name + "' not in oracle");
      continue;
    }
    const auto& expected = oracle.at(name);
    bool ok = false;
    if (const auto* i = std::get_if<std::int64_t>(&value)) {
      ok = expected.is_number_integer() && expected.get<std::int64_t>() == *i;
    } else {
      ok = expected.is_string() && numbers_match(std::get<double>(value), parse_repr(expected.get<std::string>()));
    }
    if (!ok) diffs.push_back("parameter '" + name + "' differs: oracle " + expected.dump());
  }
}

void compare_series(const ulog::FlightLog& log, const nlohmann::json& oracle, std::vector<std::string>& diffs) {
  if (log.series().size() != oracle.size()) {
    diffs.push_back("series count " + std::to_string(log.series().size()) + " vs oracle " +
                    std::to_string(oracle.size()));
  }
  auto it = log.series().begin();
  for (const auto& expected : oracle) {
    const std::string name = expected.at("name");
    const auto multi_id = expected.at("multi_id").get<int>();
    const std::string label = name + "/" + std::to_string(multi_id);
    if (it == log.series().end()) {
      diffs.push_back("missing series " + label);
      continue;
    }
    const auto& [key, series] = *it++;
    if (key.name != name || key.multi_id != multi_id) {
      diffs.push_back("series order: got " + key.name + "/" + std::to_string(key.multi_id) + ", oracle " + label);
      continue;
    }
    if (series.size() != expected.at("count").get<std::size_t>()) {
      diffs.push_back(label + ": count " + std::to_string(series.size()) + " vs " + expected.at("count").dump());
      continue;
    }
    if (series.timestamps().front() != expected.at("first_timestamp").get<std::uint64_t>() ||
        series.timestamps().back() != expected.at("last_timestamp").get<std::uint64_t>()) {
      diffs.push_back(label + ": first/last timestamp differ");
    }
    const auto& fields = expected.at("fields");
    if (series.columns().size() != fields.size()) {
      diffs.push_back(label + ": column count " + std::to_string(series.columns().size()) + " vs " +
                      std::to_string(fields.size()));
      continue;
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto& column = series.columns()[c];
      const auto& f = fields[c];
      if (column.name() != f.at("name").get<std::string>()) {
        diffs.push_back(label + ": column " + std::to_string(c) + " named " + column.name() + " vs " + f.at("name").dump());
        continue;
      }
      if (std::string(ulog::scalar_type_name(column.kind())) != f.at("type").get<std::string>()) {
        diffs.push_back(label + "." + column.name() + ": type differs");
      }
      if (hex64(fnv1a64(column.raw())) != f.at("fnv1a64").get<std::string>()) {
        diffs.push_back(label + "." + column.name() + ": values differ");
      }
    }
  }
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::byte> bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (std::byte b : bytes) {
    h ^= static_cast<std::uint8_t>(b);
    h *= 0x100000001B3ull;
  }
  return h;
}

nlohmann::json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return nlohmann::json::parse(in);
}

std::vector<std::string> compare_with_oracle(const ulog::FlightLog& log, const nlohmann::json& oracle) {
  std::vector<std::string> diffs;
  if (log.start_timestamp_us() != oracle.at("start_timestamp").get<std::uint64_t>()) {
    diffs.push_back("start timestamp differs");
  }
  if (log.last_timestamp_us() != oracle.at("last_timestamp").get<std::uint64_t>()) {
    diffs.push_back("last timestamp differs");
  }
  if (log.corrupt() != oracle.at("file_corruption").get<bool>()) diffs.push_back("corruption flag differs");
  if (log.dropouts().size() != oracle.at("dropouts").get<std::size_t>()) diffs.push_back("dropout count differs");

  std::vector<const ulog::LoggedText*> untagged;
  for (const auto& t : log.logged_text()) {
    if (!t.tag) untagged.push_back(&t);
  }
  const auto& messages = oracle.at("logged_messages");
  if (untagged.size() != messages.size()) {
    diffs.push_back("logged message count " + std::to_string(untagged.size()) + " vs " + std::to_string(messages.size()));
  } else {
    for (std::size_t i = 0; i < untagged.size(); ++i) {
      const auto& m = messages[i];
      if (untagged[i]->level != m.at("level").get<int>() ||
          untagged[i]->timestamp_us != m.at("timestamp").get<std::uint64_t>() ||
          untagged[i]->text != m.at("text").get<std::string>()) {
        diffs.push_back("logged message " + std::to_string(i) + " differs");
      }
    }
  }
  compare_info(log, oracle.at("info"), diffs);
  compare_params(log, oracle.at("initial_parameters"), diffs);
  compare_series(log, oracle.at("series"), diffs);
  return diffs;
}

std::filesystem::path data_dir() { return SKYTRACE_TEST_DATA_DIR; }

std::vector<std::string> sample_logs() { return {"sample", "sample_small", "sample_log_small"}; }

}  // namespace skytrace::testing
