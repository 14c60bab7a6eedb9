#include "skytrace/model/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "default_configs.hpp"
#include "skytrace/error.hpp"

namespace skytrace::model {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

YAML::Node load_yaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    config_error(std::string("config is not valid YAML: ") + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check_version(const YAML::Node& root, const char* what) {
  if (!root.IsMap()) config_error(std::string(what) + ": top level must be a mapping");
  if (root["version"] && root["version"].as<int>(0) != 1) {
    config_error(std::string(what) + ": unsupported version");
  }
}

AttributeRef parse_ref(const YAML::Node& node, const char* context) {
  const std::string text = node.as<std::string>("");
  auto ref = AttributeRef::parse(text);
  if (!ref) config_error(std::string(context) + ": bad attribute reference '" + text + "'");
  return *ref;
}

std::vector<AttributeRef> parse_refs(const YAML::Node& node, const char* context) {
  std::vector<AttributeRef> out;
  if (!node) return out;
  if (node.IsScalar()) {
    out.push_back(parse_ref(node, context));
    return out;
  }
  if (!node.IsSequence()) config_error(std::string(context) + ": expected a list of references");
  for (const auto& item : node) out.push_back(parse_ref(item, context));
  return out;
}

PositionSource parse_source(const YAML::Node& node) {
  if (!node.IsMap() || !node["message"] || !node["lat"] || !node["lon"]) {
    config_error("position source needs message, lat and lon");
  }
  PositionSource src;
  const std::string message = node["message"].as<std::string>();
  const auto instance = static_cast<std::uint8_t>(node["instance"].as<int>(0));
  auto ref = [&](const char* key) { return AttributeRef{message, instance, node[key].as<std::string>()}; };
  src.lat = ref("lat");
  src.lon = ref("lon");
  if (node["alt"]) src.alt = ref("alt");
  if (node["fix_type"]) src.fix_type = ref("fix_type");
  if (node["valid"]) src.valid = ref("valid");
  src.position_scale = node["position_scale"].as<double>(1.0);
  src.alt_scale = node["alt_scale"].as<double>(1.0);
  src.min_fix_type = node["min_fix_type"].as<std::int64_t>(3);
  return src;
}

std::vector<PositionSource> parse_sources(const YAML::Node& node) {
  std::vector<PositionSource> out;
  if (!node) return out;
  if (!node.IsSequence()) config_error("layer must be a list of position sources");
  for (const auto& item : node) out.push_back(parse_source(item));
  return out;
}

}  // namespace

const char* to_string(PathLayer layer) {
  switch (layer) {
    case PathLayer::Recorded:
      return "recorded";
    case PathLayer::Estimated:
      return "estimated";
    case PathLayer::Setpoints:
      return "setpoints";
  }
  return "?";
}

std::optional<PathLayer> parse_path_layer(std::string_view name) {
  if (name == "recorded") return PathLayer::Recorded;
  if (name == "estimated") return PathLayer::Estimated;
  if (name == "setpoints") return PathLayer::Setpoints;
  return std::nullopt;
}

const std::vector<PositionSource>& HierarchyConfig::layer(PathLayer which) const {
  switch (which) {
    case PathLayer::Recorded:
      return recorded;
    case PathLayer::Estimated:
      return estimated;
    case PathLayer::Setpoints:
      return setpoints;
  }
  return recorded;
}

HierarchyConfig HierarchyConfig::parse(std::string_view yaml) {
  const YAML::Node root = load_yaml(yaml);
  check_version(root, "hierarchy config");
  HierarchyConfig config;
  try {
    if (const auto layers = root["layers"]) {
      config.recorded = parse_sources(layers["recorded"]);
      config.estimated = parse_sources(layers["estimated"]);
      config.setpoints = parse_sources(layers["setpoints"]);
    }
    config.flight_mode = parse_refs(root["flight_mode"], "flight_mode");
    if (const auto aliases = root["aliases"]) {
      if (!aliases.IsMap()) config_error("aliases must be a mapping");
      for (const auto& kv : aliases) {
        config.aliases[kv.first.as<std::string>()] = parse_refs(kv.second, "aliases");
      }
    }
  } catch (const YAML::Exception& e) {
    config_error(std::string("hierarchy config: ") + e.what());
  }
  return config;
}

HierarchyConfig HierarchyConfig::load(const std::filesystem::path& path) { return parse(read_text(path)); }

const HierarchyConfig& HierarchyConfig::defaults() {
  static const HierarchyConfig config = parse(defaults::kHierarchyYaml);
  return config;
}

FlightModeTable::FlightModeTable(std::vector<FlightMode> modes) {
  for (auto& mode : modes) {
    const std::int64_t id = mode.id;
    modes_[id] = std::move(mode);
  }
}

FlightMode FlightModeTable::lookup(std::int64_t id) const {
  if (auto it = modes_.find(id); it != modes_.end()) return it->second;
  return {id, "Mode " + std::to_string(id), false};
}

FlightModeTable FlightModeTable::parse(std::string_view yaml) {
  const YAML::Node root = load_yaml(yaml);
  check_version(root, "flight mode table");
  std::vector<FlightMode> modes;
  try {
    const auto list = root["modes"];
    if (!list || !list.IsSequence()) config_error("flight mode table needs a 'modes' list");
    for (const auto& item : list) {
      if (!item["id"] || !item["label"]) config_error("flight mode entries need id and label");
      modes.push_back({item["id"].as<std::int64_t>(), item["label"].as<std::string>(), item["failsafe"].as<bool>(false)});
    }
  } catch (const YAML::Exception& e) {
    config_error(std::string("flight mode table: ") + e.what());
  }
  return FlightModeTable(std::move(modes));
}

FlightModeTable FlightModeTable::load(const std::filesystem::path& path) { return parse(read_text(path)); }

const FlightModeTable& FlightModeTable::defaults() {
  static const FlightModeTable table = parse(defaults::kFlightModesYaml);
  return table;
}

std::optional<AttributeRef> resolve_alias(const ulog::FlightLog& log, const HierarchyConfig& config,
                                          std::string_view name_or_ref) {
  if (auto it = config.aliases.find(name_or_ref); it != config.aliases.end()) {
    for (const AttributeRef& ref : it->second) {
      if (resolves(log, ref)) return ref;
    }
    return std::nullopt;
  }
  if (auto ref = AttributeRef::parse(name_or_ref); ref && resolves(log, *ref)) return ref;
  return std::nullopt;
}

}  // namespace skytrace::model
