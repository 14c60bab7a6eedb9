#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skytrace/model/attribute.hpp"
#include "skytrace/ulog/flight_log.hpp"

namespace skytrace::viz {

struct Rgb {
  std::uint8_t r{0};
  std::uint8_t g{0};
  std::uint8_t b{0};

  std::string hex() const;  // "#rrggbb"
  // Throws std::invalid_argument on anything but "#rrggbb" / "rrggbb".
  static Rgb from_hex(std::string_view text);
  bool operator==(const Rgb&) const = default;
};

enum class ScaleKind { Sequential, Diverging, Cyclic, Categorical };

const char* to_string(ScaleKind kind);
std::optional<ScaleKind> parse_scale_kind(std::string_view name);

inline constexpr Rgb kNoDataColor{0x9e, 0x9e, 0x9e};

// Five equal-lightness-step sequential stops, light orange to near black.
const std::vector<Rgb>& sequential_stops();
// Red-white-blue diverging stops.
const std::vector<Rgb>& diverging_stops();
// Cyclic stops; first and last are the same color.
const std::vector<Rgb>& cyclic_stops();
// Okabe-Ito categorical palette; labels past the end wrap around.
const std::vector<Rgb>& categorical_palette();

class ColorScale {
 public:
  ScaleKind kind() const { return kind_; }
  double domain_min() const { return min_; }
  double domain_max() const { return max_; }
  const std::vector<std::string>& categories() const { return categories_; }
  const std::vector<Rgb>& stops() const { return stops_; }

 private:
  friend ColorScale make_scale(ScaleKind, double, double, std::vector<Rgb>);
  friend ColorScale make_categorical_scale(std::vector<std::string>, std::vector<Rgb>);

  ScaleKind kind_{ScaleKind::Sequential};
  double min_{0.0};
  double max_{1.0};
  std::vector<std::string> categories_;
  std::vector<Rgb> stops_;
};

// Continuous scale over [min, max]. Empty `stops` selects the kind's
// default palette. Throws Error(InvalidDomain) unless min < max (both
// finite) and there are at least two stops.
ColorScale make_scale(ScaleKind kind, double min, double max, std::vector<Rgb> stops = {});

// Categorical scale; label i gets palette[i % palette.size()].
ColorScale make_categorical_scale(std::vector<std::string> labels, std::vector<Rgb> palette = {});

// Continuous kinds clamp to the domain and interpolate linearly in sRGB
// between equally spaced stops. Categorical scales treat the value as a
// category index. Missing or NaN values map to kNoDataColor.
Rgb map_value(const ColorScale& scale, std::optional<double> value);

// Categorical lookup by label; unknown labels map to kNoDataColor.
Rgb map_category(const ColorScale& scale, std::string_view label);

// Scale suited to an attribute over the whole flight: boolean columns get a
// false/true categorical scale, everything else a continuous scale of
// `kind` over the finite min..max (widened by one when constant).
ColorScale scale_for_attribute(const ulog::FlightLog& log, const model::AttributeRef& attr,
                               ScaleKind kind = ScaleKind::Sequential);

}  // namespace skytrace::viz
