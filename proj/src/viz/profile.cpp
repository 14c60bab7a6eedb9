#include "skytrace/viz/profile.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "default_configs.hpp"
#include "skytrace/error.hpp"
#include "skytrace/model/series.hpp"

namespace skytrace::viz {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

bool has_wildcard(std::string_view s) { return s.find_first_of("*?") != std::string_view::npos; }

std::string format_number(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view text) {
  std::size_t p = 0, t = 0;
  std::size_t star = std::string_view::npos, resume = 0;
  while (t < text.size()) {
    if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      resume = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++resume;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

std::optional<AttributePattern> AttributePattern::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) return std::nullopt;
  AttributePattern out;
  std::string_view head = text.substr(0, colon);
  out.field = std::string(text.substr(colon + 1));
  if (const auto slash = head.find('/'); slash != std::string_view::npos) {
    std::string_view inst = head.substr(slash + 1);
    head = head.substr(0, slash);
    if (head.empty()) return std::nullopt;
    if (inst == "*") {
      out.multi_id.reset();
    } else {
      unsigned value = 0;
      auto res = std::from_chars(inst.data(), inst.data() + inst.size(), value);
      if (res.ec != std::errc() || res.ptr != inst.data() + inst.size() || value > 255) return std::nullopt;
      out.multi_id = static_cast<std::uint8_t>(value);
    }
  }
  out.message = std::string(head);
  return out;
}

std::string AttributePattern::to_string() const {
  std::string s = message;
  if (!multi_id) {
    s += "/*";
  } else if (*multi_id != 0) {
    s += "/" + std::to_string(*multi_id);
  }
  return s + ":" + field;
}

OverviewProfile OverviewProfile::parse(std::string_view yaml) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(yaml));
  } catch (const YAML::Exception& e) {
    config_error(std::string("overview profile is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) config_error("overview profile: top level must be a mapping");
  OverviewProfile profile;
  try {
    if (root["version"] && root["version"].as<int>(0) != 1) config_error("overview profile: unsupported version");
    const auto groups = root["groups"];
    if (!groups || !groups.IsSequence()) config_error("overview profile needs a 'groups' list");
    for (const auto& g : groups) {
      ProfileGroup group;
      group.title = g["title"].as<std::string>("");
      if (group.title.empty()) config_error("overview profile: group without title");
      group.shared_scale = g["shared_scale"].as<bool>(true);
      const std::string group_unit = g["unit"].as<std::string>("");
      const auto entries = g["entries"];
      if (!entries || !entries.IsSequence() || entries.size() == 0) {
        config_error("overview profile: group '" + group.title + "' has no entries");
      }
      for (const auto& e : entries) {
        const std::string text = e["ref"].as<std::string>("");
        auto pattern = AttributePattern::parse(text);
        if (!pattern) config_error("overview profile: bad reference '" + text + "'");
        ProfileEntry entry;
        entry.pattern = *pattern;
        entry.label = e["label"].as<std::string>(pattern->field);
        entry.unit = e["unit"].as<std::string>(group_unit);
        entry.scale = e["scale"].as<double>(1.0);
        if (!std::isfinite(entry.scale)) config_error("overview profile: scale must be finite");
        group.entries.push_back(std::move(entry));
      }
      if (group.shared_scale) {
        for (const auto& entry : group.entries) {
          if (entry.unit != group.entries.front().unit) {
            config_error("overview profile: group '" + group.title + "' shares a scale across units '" +
                         group.entries.front().unit + "' and '" + entry.unit + "'");
          }
        }
      }
      profile.groups.push_back(std::move(group));
    }
  } catch (const YAML::Exception& e) {
    config_error(std::string("overview profile: ") + e.what());
  }
  return profile;
}

OverviewProfile OverviewProfile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const OverviewProfile& OverviewProfile::defaults() {
  static const OverviewProfile profile = parse(defaults::kOverviewYaml);
  return profile;
}

std::string ChartSpec::constant_text() const {
  if (constant_values.size() == 1) return format_number(constant_values.front());
  std::string out;
  for (std::size_t i = 0; i < constant_values.size() && i < series.size(); ++i) {
    if (!out.empty()) out += ", ";
    out += series[i].label + ": " + format_number(constant_values[i]);
  }
  return out;
}

namespace {

std::vector<model::AttributeRef> expand(const AttributePattern& pattern, const ulog::FlightLog& log) {
  std::vector<model::AttributeRef> refs;
  for (const auto& [key, series] : log.series()) {
    if (series.size() == 0) continue;
    if (pattern.multi_id && key.multi_id != *pattern.multi_id) continue;
    if (!glob_match(pattern.message, key.name)) continue;
    if (has_wildcard(pattern.field)) {
      for (const auto& column : model::column_names(series.schema())) {
        if (column != "timestamp" && glob_match(pattern.field, column)) {
          refs.push_back({key.name, key.multi_id, column});
        }
      }
    } else {
      model::AttributeRef ref{key.name, key.multi_id, pattern.field};
      if (model::resolves(log, ref)) refs.push_back(std::move(ref));
    }
  }
  return refs;
}

}  // namespace

std::vector<ChartSpec> resolve_profile(const OverviewProfile& profile, const ulog::FlightLog& log) {
  std::vector<ChartSpec> charts;
  for (const ProfileGroup& group : profile.groups) {
    ChartSpec chart;
    chart.title = group.title;
    chart.shared_scale = group.shared_scale;
    std::set<model::AttributeRef> seen;
    bool all_constant = true;
    for (const ProfileEntry& entry : group.entries) {
      for (auto& ref : expand(entry.pattern, log)) {
        if (!seen.insert(ref).second) continue;
        const auto series = model::get_series(log, ref);
        if (series.empty()) continue;
        const auto constant = model::detect_constant(series);
        if (constant) {
          chart.constant_values.push_back(*constant * entry.scale);
        } else {
          all_constant = false;
        }
        std::string label = entry.label;
        if (!entry.pattern.multi_id || ref.multi_id != 0) label += " #" + std::to_string(ref.multi_id);
        if (has_wildcard(entry.pattern.field)) label += " " + ref.field;
        chart.series.push_back({std::move(ref), std::move(label), entry.unit, entry.scale});
      }
    }
    if (chart.series.empty()) continue;
    if (all_constant) {
      chart.render_as = RenderAs::ConstantRow;
    } else {
      chart.constant_values.clear();
    }
    charts.push_back(std::move(chart));
  }
  return charts;
}

}  // namespace skytrace::viz
