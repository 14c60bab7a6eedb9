#include "skytrace/viz/color.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skytrace/error.hpp"
#include "skytrace/model/series.hpp"

namespace skytrace::viz {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::uint8_t lerp_channel(std::uint8_t a, std::uint8_t b, double t) {
  return static_cast<std::uint8_t>(std::lround(a + (static_cast<double>(b) - a) * t));
}

}  // namespace

std::string Rgb::hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out = "#";
  for (std::uint8_t c : {r, g, b}) {
    out += kDigits[c >> 4];
    out += kDigits[c & 0xF];
  }
  return out;
}

Rgb Rgb::from_hex(std::string_view text) {
  if (text.starts_with('#')) text.remove_prefix(1);
  if (text.size() != 6) throw std::invalid_argument("bad color '" + std::string(text) + "'");
  std::uint8_t ch[3];
  for (int i = 0; i < 3; ++i) {
    const int hi = hex_digit(text[2 * i]);
    const int lo = hex_digit(text[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("bad color '" + std::string(text) + "'");
    ch[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return {ch[0], ch[1], ch[2]};
}

const char* to_string(ScaleKind kind) {
  switch (kind) {
    case ScaleKind::Sequential:
      return "sequential";
    case ScaleKind::Diverging:
      return "diverging";
    case ScaleKind::Cyclic:
      return "cyclic";
    case ScaleKind::Categorical:
      return "categorical";
  }
  return "?";
}

std::optional<ScaleKind> parse_scale_kind(std::string_view name) {
  for (ScaleKind k : {ScaleKind::Sequential, ScaleKind::Diverging, ScaleKind::Cyclic, ScaleKind::Categorical}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

const std::vector<Rgb>& sequential_stops() {
  static const std::vector<Rgb> stops = {
      Rgb::from_hex("#f95e3f"), Rgb::from_hex("#e80936"), Rgb::from_hex("#91003e"),
      Rgb::from_hex("#691433"), Rgb::from_hex("#16132e"),
  };
  return stops;
}

const std::vector<Rgb>& diverging_stops() {
  static const std::vector<Rgb> stops = {
      Rgb::from_hex("#ca0020"), Rgb::from_hex("#f4a582"), Rgb::from_hex("#f7f7f7"),
      Rgb::from_hex("#92c5de"), Rgb::from_hex("#0571b0"),
  };
  return stops;
}

const std::vector<Rgb>& cyclic_stops() {
  static const std::vector<Rgb> stops = {
      Rgb::from_hex("#e2d9e2"), Rgb::from_hex("#6276ba"), Rgb::from_hex("#2f1436"),
      Rgb::from_hex("#b25652"), Rgb::from_hex("#e2d9e2"),
  };
  return stops;
}

const std::vector<Rgb>& categorical_palette() {
  static const std::vector<Rgb> palette = {
      Rgb::from_hex("#e69f00"), Rgb::from_hex("#56b4e9"), Rgb::from_hex("#009e73"), Rgb::from_hex("#f0e442"),
      Rgb::from_hex("#0072b2"), Rgb::from_hex("#d55e00"), Rgb::from_hex("#cc79a7"), Rgb::from_hex("#000000"),
  };
  return palette;
}

ColorScale make_scale(ScaleKind kind, double min, double max, std::vector<Rgb> stops) {
  if (kind == ScaleKind::Categorical) {
    throw Error(ErrorCode::InvalidDomain, "categorical scales take labels, not a numeric domain");
  }
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw Error(ErrorCode::InvalidDomain,
                "color domain needs min < max (got " + std::to_string(min) + ", " + std::to_string(max) + ")");
  }
  if (stops.empty()) {
    stops = kind == ScaleKind::Diverging ? diverging_stops()
            : kind == ScaleKind::Cyclic  ? cyclic_stops()
                                         : sequential_stops();
  }
  if (stops.size() < 2) throw Error(ErrorCode::InvalidDomain, "continuous scales need at least two stops");
  ColorScale scale;
  scale.kind_ = kind;
  scale.min_ = min;
  scale.max_ = max;
  scale.stops_ = std::move(stops);
  return scale;
}

ColorScale make_categorical_scale(std::vector<std::string> labels, std::vector<Rgb> palette) {
  if (palette.empty()) palette = categorical_palette();
  ColorScale scale;
  scale.kind_ = ScaleKind::Categorical;
  scale.min_ = 0.0;
  scale.max_ = labels.empty() ? 0.0 : static_cast<double>(labels.size() - 1);
  scale.categories_ = std::move(labels);
  scale.stops_ = std::move(palette);
  return scale;
}

Rgb map_value(const ColorScale& scale, std::optional<double> value) {
  if (!value || std::isnan(*value)) return kNoDataColor;
  const auto& stops = scale.stops();
  if (scale.kind() == ScaleKind::Categorical) {
    if (!std::isfinite(*value)) return kNoDataColor;
    const auto n = static_cast<std::int64_t>(stops.size());
    std::int64_t index = static_cast<std::int64_t>(std::floor(*value)) % n;
    if (index < 0) index += n;
    return stops[static_cast<std::size_t>(index)];
  }
  const double t = std::clamp((*value - scale.domain_min()) / (scale.domain_max() - scale.domain_min()), 0.0, 1.0);
  const double pos = t * static_cast<double>(stops.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  if (i >= stops.size() - 1) return stops.back();
  const double frac = pos - static_cast<double>(i);
  const Rgb& a = stops[i];
  const Rgb& b = stops[i + 1];
  return {lerp_channel(a.r, b.r, frac), lerp_channel(a.g, b.g, frac), lerp_channel(a.b, b.b, frac)};
}

Rgb map_category(const ColorScale& scale, std::string_view label) {
  const auto& cats = scale.categories();
  auto it = std::find(cats.begin(), cats.end(), label);
  if (it == cats.end()) return kNoDataColor;
  return map_value(scale, static_cast<double>(it - cats.begin()));
}

ColorScale scale_for_attribute(const ulog::FlightLog& log, const model::AttributeRef& attr, ScaleKind kind) {
  const model::TimeSeries series = model::get_series(log, attr);
  bool boolean = false;
  if (const auto* s = log.find_series(attr.key())) {
    if (const auto* column = s->find_column(attr.field)) boolean = column->kind() == ulog::ScalarKind::Bool;
  }
  if (boolean || kind == ScaleKind::Categorical) {
    if (boolean) return make_categorical_scale({"false", "true"});
    double hi = 0.0;
    for (double v : series.values) {
      if (std::isfinite(v)) hi = std::max(hi, v);
    }
    std::vector<std::string> labels;
    for (int i = 0; i <= static_cast<int>(hi) && i < 256; ++i) labels.push_back(std::to_string(i));
    return make_categorical_scale(std::move(labels));
  }
  double lo = 0.0;
  double hi = 1.0;
  if (!series.empty()) {
    const model::Summary s = model::summarize(series);
    if (s.min) {
      lo = *s.min;
      hi = *s.max;
    }
  }
  if (!(lo < hi)) hi = lo + 1.0;
  return make_scale(kind, lo, hi);
}

}  // namespace skytrace::viz
