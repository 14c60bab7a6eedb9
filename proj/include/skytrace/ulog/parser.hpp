#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "skytrace/ulog/flight_log.hpp"

namespace skytrace::ulog {

// ULog file magic: "ULog" followed by 0x01 0x12 0x35.
inline constexpr std::uint8_t kMagic[7] = {0x55, 0x4C, 0x6F, 0x67, 0x01, 0x12, 0x35};
inline constexpr std::size_t kHeaderSize = 16;

enum class ParseErrorKind {
  MalformedHeader,
  TruncatedBody,
  SchemaViolation,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ParseErrorKind kind() const { return kind_; }

 private:
  ParseErrorKind kind_;
};

const char* to_string(ParseErrorKind kind);

struct HeaderInfo {
  std::uint8_t version{0};
  std::uint64_t start_boot_us{0};
};

struct ParseOptions {
  // Strict mode turns salvageable damage (mid-record EOF, data records whose
  // size disagrees with their format) into errors instead of skipping it.
  bool strict{false};
};

HeaderInfo validate_header(std::span<const std::uint8_t> bytes);

FlightLog parse_log(std::span<const std::uint8_t> bytes, const ParseOptions& options = {});

struct MessageInfo {
  std::string name;
  std::uint8_t multi_id{0};
  std::size_t record_count{0};
  const MessageSchema* schema{nullptr};
};

// One entry per non-empty series, ordered by name then instance.
std::vector<MessageInfo> list_messages(const FlightLog& log);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

}  // namespace skytrace::ulog
