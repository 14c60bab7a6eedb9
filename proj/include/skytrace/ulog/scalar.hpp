#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace skytrace::ulog {

// Primitive field types of the ULog format definition language.
enum class ScalarKind : std::uint8_t {
  Int8,
  UInt8,
  Int16,
  UInt16,
  Int32,
  UInt32,
  Int64,
  UInt64,
  Float32,
  Float64,
  Bool,
  Char,
};

constexpr std::size_t scalar_size(ScalarKind kind) {
  switch (kind) {
    case ScalarKind::Int8:
    case ScalarKind::UInt8:
    case ScalarKind::Bool:
    case ScalarKind::Char:
      return 1;
    case ScalarKind::Int16:
    case ScalarKind::UInt16:
      return 2;
    case ScalarKind::Int32:
    case ScalarKind::UInt32:
    case ScalarKind::Float32:
      return 4;
    case ScalarKind::Int64:
    case ScalarKind::UInt64:
    case ScalarKind::Float64:
      return 8;
  }
  return 0;
}

constexpr bool is_floating(ScalarKind kind) {
  return kind == ScalarKind::Float32 || kind == ScalarKind::Float64;
}

constexpr bool is_integral(ScalarKind kind) { return !is_floating(kind); }

// Parses a ULog type name ("int32_t", "float", "bool", ...).
std::optional<ScalarKind> parse_scalar_kind(std::string_view type_name);

// Canonical ULog type name, the inverse of parse_scalar_kind.
std::string_view scalar_type_name(ScalarKind kind);

// Reads one little-endian scalar from `p` and widens it to double.
double load_as_double(ScalarKind kind, const std::byte* p);

// Reads one little-endian integral scalar from `p` as int64 (uint64 wraps).
std::int64_t load_as_int64(ScalarKind kind, const std::byte* p);

}  // namespace skytrace::ulog
