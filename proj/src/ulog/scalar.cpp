#include "skytrace/ulog/scalar.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <utility>

namespace skytrace::ulog {

static_assert(std::endian::native == std::endian::little, "ULog decoding assumes a little-endian host");

namespace {

constexpr std::array<std::pair<std::string_view, ScalarKind>, 12> kTypeNames{{
    {"int8_t", ScalarKind::Int8},
    {"uint8_t", ScalarKind::UInt8},
    {"int16_t", ScalarKind::Int16},
    {"uint16_t", ScalarKind::UInt16},
    {"int32_t", ScalarKind::Int32},
    {"uint32_t", ScalarKind::UInt32},
    {"int64_t", ScalarKind::Int64},
    {"uint64_t", ScalarKind::UInt64},
    {"float", ScalarKind::Float32},
    {"double", ScalarKind::Float64},
    {"bool", ScalarKind::Bool},
    {"char", ScalarKind::Char},
}};

template <typename T>
T load(const std::byte* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

}  // namespace

std::optional<ScalarKind> parse_scalar_kind(std::string_view type_name) {
  for (const auto& [name, kind] : kTypeNames) {
    if (name == type_name) return kind;
  }
  return std::nullopt;
}

std::string_view scalar_type_name(ScalarKind kind) {
  for (const auto& [name, k] : kTypeNames) {
    if (k == kind) return name;
  }
  return "?";
}

double load_as_double(ScalarKind kind, const std::byte* p) {
  switch (kind) {
    case ScalarKind::Int8:
    case ScalarKind::Char:
      return load<std::int8_t>(p);
    case ScalarKind::UInt8:
      return load<std::uint8_t>(p);
    case ScalarKind::Bool:
      return load<std::uint8_t>(p) != 0 ? 1.0 : 0.0;
    case ScalarKind::Int16:
      return load<std::int16_t>(p);
    case ScalarKind::UInt16:
      return load<std::uint16_t>(p);
    case ScalarKind::Int32:
      return load<std::int32_t>(p);
    case ScalarKind::UInt32:
      return load<std::uint32_t>(p);
    case ScalarKind::Int64:
      return static_cast<double>(load<std::int64_t>(p));
    case ScalarKind::UInt64:
      return static_cast<double>(load<std::uint64_t>(p));
    case ScalarKind::Float32:
      return load<float>(p);
    case ScalarKind::Float64:
      return load<double>(p);
  }
  return 0.0;
}

std::int64_t load_as_int64(ScalarKind kind, const std::byte* p) {
  switch (kind) {
    case ScalarKind::Int8:
    case ScalarKind::Char:
      return load<std::int8_t>(p);
    case ScalarKind::UInt8:
    case ScalarKind::Bool:
      return load<std::uint8_t>(p);
    case ScalarKind::Int16:
      return load<std::int16_t>(p);
    case ScalarKind::UInt16:
      return load<std::uint16_t>(p);
    case ScalarKind::Int32:
      return load<std::int32_t>(p);
    case ScalarKind::UInt32:
      return load<std::uint32_t>(p);
    case ScalarKind::Int64:
      return load<std::int64_t>(p);
    case ScalarKind::UInt64:
      return static_cast<std::int64_t>(load<std::uint64_t>(p));
    case ScalarKind::Float32:
      return static_cast<std::int64_t>(load<float>(p));
    case ScalarKind::Float64:
      return static_cast<std::int64_t>(load<double>(p));
  }
  return 0;
}

}  // namespace skytrace::ulog
