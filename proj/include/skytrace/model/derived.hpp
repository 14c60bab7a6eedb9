#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace skytrace::model {

enum class EulerAxis { Roll, Pitch, Yaw };

// A field expression like "roll(q)": an Euler angle (radians, ZYX order)
// computed from the four columns source[0..3] holding a w-first quaternion.
struct DerivedField {
  EulerAxis axis;
  std::string source;
};

std::optional<DerivedField> parse_derived(std::string_view field);

double euler_angle(EulerAxis axis, double w, double x, double y, double z);

}  // namespace skytrace::model
