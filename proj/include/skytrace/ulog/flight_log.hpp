#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "skytrace/ulog/scalar.hpp"

namespace skytrace::ulog {

// One flattened field of a message layout. Nested types are expanded into
// dotted names ("current.lat"), nested arrays into "esc[2].rpm".
struct FieldDef {
  std::string name;
  ScalarKind kind{ScalarKind::UInt8};
  std::uint32_t array_len{1};
  bool is_array{false};     // declared with [n], even when n == 1
  std::uint32_t offset{0};  // byte offset of the first element in a record

  std::size_t byte_size() const { return scalar_size(kind) * array_len; }
  bool operator==(const FieldDef&) const = default;
};

struct MessageSchema {
  std::string name;
  std::uint8_t multi_id{0};
  std::vector<FieldDef> fields;
  std::size_t record_size{0};      // bytes per data record (trailing padding stripped)
  std::size_t timestamp_field{0};  // index into fields

  bool operator==(const MessageSchema&) const = default;
};

// A single scalar column stored as packed little-endian bytes in the
// field's native width.
class Column {
 public:
  Column() = default;
  Column(std::string name, ScalarKind kind) : name_(std::move(name)), kind_(kind) {}

  const std::string& name() const { return name_; }
  ScalarKind kind() const { return kind_; }
  std::size_t size() const { return bytes_.size() / scalar_size(kind_); }
  bool empty() const { return bytes_.empty(); }

  double as_double(std::size_t i) const {
    return load_as_double(kind_, bytes_.data() + i * scalar_size(kind_));
  }
  std::int64_t as_int64(std::size_t i) const {
    return load_as_int64(kind_, bytes_.data() + i * scalar_size(kind_));
  }
  std::span<const std::byte> raw() const { return bytes_; }

  void reserve(std::size_t n) { bytes_.reserve(n * scalar_size(kind_)); }
  void append_raw(const std::byte* p) { bytes_.insert(bytes_.end(), p, p + scalar_size(kind_)); }
  void permute(std::span<const std::size_t> order);

  bool operator==(const Column&) const = default;

 private:
  std::string name_;
  ScalarKind kind_{ScalarKind::UInt8};
  std::vector<std::byte> bytes_;
};

struct SeriesKey {
  std::string name;
  std::uint8_t multi_id{0};

  auto operator<=>(const SeriesKey&) const = default;
  bool operator==(const SeriesKey&) const = default;
};

// All records of one (message, instance). Array fields expand to one
// column per element named "field[i]".
class MessageSeries {
 public:
  explicit MessageSeries(MessageSchema schema);

  const MessageSchema& schema() const { return schema_; }
  std::span<const std::uint64_t> timestamps() const { return timestamps_; }
  const std::vector<Column>& columns() const { return columns_; }
  std::size_t size() const { return timestamps_.size(); }

  // nullptr when the series has no such column.
  const Column* find_column(std::string_view name) const;

  void append_record(const std::byte* record);
  // Stable-sorts all columns by timestamp. Returns false if already sorted.
  bool sort_by_time();

  bool operator==(const MessageSeries&) const = default;

 private:
  MessageSchema schema_;
  std::vector<std::uint64_t> timestamps_;
  std::vector<Column> columns_;
  std::vector<std::uint32_t> column_offsets_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
};

using InfoValue = std::variant<std::int64_t, std::uint64_t, double, std::string, std::vector<std::uint8_t>>;
using ParamValue = std::variant<std::int64_t, double>;

struct LoggedText {
  std::uint64_t timestamp_us{0};
  std::uint8_t level{0};  // raw level byte, '0' (emergency) .. '7' (debug)
  std::optional<std::uint16_t> tag;
  std::string text;

  // 0..7 syslog-style severity; 8 for an unrecognised level byte.
  int severity() const { return level >= '0' && level <= '7' ? level - '0' : 8; }
  bool operator==(const LoggedText&) const = default;
};

struct ParameterChange {
  std::uint64_t timestamp_us{0};
  std::string name;
  ParamValue value;
  bool operator==(const ParameterChange&) const = default;
};

struct Dropout {
  std::uint64_t timestamp_us{0};
  std::uint16_t duration_ms{0};
  bool operator==(const Dropout&) const = default;
};

// Decoded contents of one ULog file. Immutable once produced by parse_log.
class FlightLog {
 public:
  std::uint8_t version() const { return version_; }
  std::uint64_t start_timestamp_us() const { return start_timestamp_us_; }
  // Largest data-record timestamp seen (the header timestamp if none).
  std::uint64_t last_timestamp_us() const { return last_timestamp_us_; }

  const std::map<SeriesKey, MessageSeries>& series() const { return series_; }
  const MessageSeries* find_series(const SeriesKey& key) const;
  // Every (message, instance) the logger subscribed, including those that
  // never produced a record.
  const std::map<SeriesKey, MessageSchema>& subscriptions() const { return subscriptions_; }
  bool is_subscribed(const SeriesKey& key) const { return subscriptions_.contains(key); }

  const std::map<std::string, ParamValue, std::less<>>& parameters() const { return parameters_; }
  const std::vector<ParameterChange>& parameter_changes() const { return parameter_changes_; }
  const std::map<std::string, InfoValue, std::less<>>& info() const { return info_; }
  const std::map<std::string, std::vector<std::vector<InfoValue>>, std::less<>>& info_multiple() const {
    return info_multiple_;
  }
  const std::vector<LoggedText>& logged_text() const { return logged_text_; }
  const std::vector<Dropout>& dropouts() const { return dropouts_; }

  // File ended mid-record; everything before the cut was kept.
  bool truncated() const { return truncated_; }
  // Corrupt or unreadable records were skipped.
  bool corrupt() const { return corrupt_; }
  std::size_t skipped_records() const { return skipped_records_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  bool operator==(const FlightLog&) const = default;

 private:
  friend class LogReader;

  std::uint8_t version_{0};
  std::uint64_t start_timestamp_us_{0};
  std::uint64_t last_timestamp_us_{0};
  std::map<SeriesKey, MessageSeries> series_;
  std::map<SeriesKey, MessageSchema> subscriptions_;
  std::map<std::string, ParamValue, std::less<>> parameters_;
  std::vector<ParameterChange> parameter_changes_;
  std::map<std::string, InfoValue, std::less<>> info_;
  std::map<std::string, std::vector<std::vector<InfoValue>>, std::less<>> info_multiple_;
  std::vector<LoggedText> logged_text_;
  std::vector<Dropout> dropouts_;
  bool truncated_{false};
  bool corrupt_{false};
  std::size_t skipped_records_{0};
  std::vector<std::string> warnings_;
};

}  // namespace skytrace::ulog
