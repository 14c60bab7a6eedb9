#include "skytrace/ulog/parser.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <string_view>
#include <unordered_map>

namespace skytrace::ulog {

namespace {

constexpr std::uint8_t kSyncBytes[8] = {0x2F, 0x73, 0x13, 0x20, 0x25, 0x0C, 0xBB, 0x12};
constexpr std::size_t kRecordHeaderSize = 3;
constexpr std::size_t kMaxRecordSize = 0xFFFF;
constexpr int kMaxNesting = 32;

enum RecordType : std::uint8_t {
  kFormat = 'F',
  kData = 'D',
  kInfo = 'I',
  kInfoMultiple = 'M',
  kParameter = 'P',
  kParameterDefault = 'Q',
  kAddLogged = 'A',
  kRemoveLogged = 'R',
  kSync = 'S',
  kDropout = 'O',
  kLogging = 'L',
  kLoggingTagged = 'C',
  kFlagBits = 'B',
};

// A record the reader could not make sense of; skipped, marks the log corrupt.
struct MalformedRecord {};

template <typename T>
T load(const std::uint8_t* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

struct Cursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos{0};

  std::size_t remaining() const { return bytes.size() - pos; }
  void need(std::size_t n) const {
    if (remaining() < n) throw MalformedRecord{};
  }
  std::uint8_t u8() {
    need(1);
    return bytes[pos++];
  }
  template <typename T>
  T get() {
    need(sizeof(T));
    T v = load<T>(bytes.data() + pos);
    pos += sizeof(T);
    return v;
  }
  std::string_view str(std::size_t n) {
    need(n);
    std::string_view s(reinterpret_cast<const char*>(bytes.data() + pos), n);
    pos += n;
    return s;
  }
  std::string_view rest() { return str(remaining()); }
};

struct RawField {
  std::string type;
  std::uint32_t array_size{0};
  bool is_array{false};
  std::string name;
};

struct TypedKeyValue {
  std::string type;
  std::string key;
  InfoValue value;
};

// "<type> <key>" followed by the value bytes.
TypedKeyValue parse_typed_value(Cursor& in) {
  const std::uint8_t key_len = in.u8();
  std::string_view type_key = in.str(key_len);
  const auto space = type_key.find(' ');
  if (space == std::string_view::npos) throw MalformedRecord{};
  TypedKeyValue out;
  out.type = std::string(type_key.substr(0, space));
  std::string_view key = type_key.substr(space + 1);
  out.key = std::string(key.substr(0, key.find(' ')));
  std::string_view raw = in.rest();

  if (out.type.starts_with("char[")) {
    out.value = std::string(raw);
    return out;
  }
  if (auto kind = parse_scalar_kind(out.type)) {
    if (raw.size() != scalar_size(*kind)) throw MalformedRecord{};
    const auto* p = reinterpret_cast<const std::byte*>(raw.data());
    if (is_floating(*kind)) {
      out.value = load_as_double(*kind, p);
    } else if (*kind == ScalarKind::UInt64) {
      out.value = static_cast<std::uint64_t>(load_as_int64(*kind, p));
    } else {
      out.value = load_as_int64(*kind, p);
    }
    return out;
  }
  out.value = std::vector<std::uint8_t>(raw.begin(), raw.end());
  return out;
}

std::vector<RawField> parse_format_fields(std::string_view spec) {
  std::vector<RawField> fields;
  while (!spec.empty()) {
    const auto semi = spec.find(';');
    std::string_view item = spec.substr(0, semi);
    spec = semi == std::string_view::npos ? std::string_view{} : spec.substr(semi + 1);
    if (item.empty()) continue;

    const auto space = item.find(' ');
    if (space == std::string_view::npos) throw MalformedRecord{};
    std::string_view type = item.substr(0, space);
    std::string_view name = item.substr(space + 1);
    name = name.substr(0, name.find(' '));

    RawField field;
    field.name = std::string(name);
    const auto open = type.find('[');
    if (open == std::string_view::npos) {
      field.type = std::string(type);
    } else {
      const auto close = type.find(']', open);
      if (close == std::string_view::npos) throw MalformedRecord{};
      std::string_view digits = type.substr(open + 1, close - open - 1);
      std::uint32_t n = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc{} || ptr != digits.data() + digits.size()) throw MalformedRecord{};
      field.type = std::string(type.substr(0, open));
      field.array_size = n;
      // A zero-length array is read as a plain scalar, like the reference parser.
      field.is_array = n > 0;
    }
    fields.push_back(std::move(field));
  }
  return fields;
}

}  // namespace

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::MalformedHeader:
      return "MalformedHeader";
    case ParseErrorKind::TruncatedBody:
      return "TruncatedBody";
    case ParseErrorKind::SchemaViolation:
      return "SchemaViolation";
  }
  return "ParseError";
}

HeaderInfo validate_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) {
    throw ParseError(ParseErrorKind::MalformedHeader,
                     "file too short for a ULog header (" + std::to_string(bytes.size()) + " bytes)");
  }
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw ParseError(ParseErrorKind::MalformedHeader, "not a ULog file (bad magic)");
  }
  HeaderInfo info;
  info.version = bytes[7];
  info.start_boot_us = load<std::uint64_t>(bytes.data() + 8);
  return info;
}

class LogReader {
 public:
  LogReader(std::span<const std::uint8_t> bytes, const ParseOptions& options) : bytes_(bytes), options_(options) {}

  FlightLog run() {
    const HeaderInfo header = validate_header(bytes_);
    log_.version_ = header.version;
    log_.start_timestamp_us_ = header.start_boot_us;
    log_.last_timestamp_us_ = header.start_boot_us;
    if (header.version > 1) {
      log_.warnings_.push_back("unknown file version " + std::to_string(header.version) + ", reading anyway");
    }

    pos_ = kHeaderSize;
    if (pos_ == bytes_.size()) mark_truncated();
    read_definitions();
    for (std::uint64_t offset : appended_offsets_) {
      if (offset <= pos_ || offset > bytes_.size()) continue;
      read_data(static_cast<std::size_t>(offset));
      pos_ = static_cast<std::size_t>(offset);
    }
    read_data(bytes_.size());

    for (auto& [key, series] : log_.series_) {
      if (series.sort_by_time()) {
        log_.warnings_.push_back(key.name + "/" + std::to_string(key.multi_id) +
                                 ": out-of-order timestamps, records re-sorted");
      }
    }
    return std::move(log_);
  }

 private:
  struct Subscription {
    SeriesKey key;
    const MessageSchema* schema{nullptr};
    MessageSeries* series{nullptr};
  };

  void mark_truncated() {
    if (options_.strict) {
      throw ParseError(ParseErrorKind::TruncatedBody,
                       "file ends inside a record at offset " + std::to_string(pos_));
    }
    if (!log_.truncated_) log_.warnings_.push_back("file truncated at offset " + std::to_string(pos_));
    log_.truncated_ = true;
  }

  void mark_corrupt() {
    log_.corrupt_ = true;
    ++log_.skipped_records_;
  }

  static bool is_corrupt_header(std::uint16_t size, std::uint8_t type) {
    return type == 0 || size == 0 || size > 10000;
  }

  // Reads the next record header and payload. Returns false at end of data.
  bool next_record(std::uint8_t& type, std::span<const std::uint8_t>& payload, std::size_t& start) {
    const std::size_t left = bytes_.size() - pos_;
    if (left == 0) return false;
    if (left < kRecordHeaderSize) {
      mark_truncated();
      pos_ = bytes_.size();
      return false;
    }
    start = pos_;
    const auto size = load<std::uint16_t>(bytes_.data() + pos_);
    type = bytes_[pos_ + 2];
    if (left - kRecordHeaderSize < size) {
      mark_truncated();
      pos_ = bytes_.size();
      return false;
    }
    payload = bytes_.subspan(pos_ + kRecordHeaderSize, size);
    pos_ += kRecordHeaderSize + size;
    return true;
  }

  void read_definitions() {
    std::uint8_t type = 0;
    std::span<const std::uint8_t> payload;
    std::size_t start = 0;
    while (next_record(type, payload, start)) {
      try {
        switch (type) {
          case kInfo:
            handle_info(payload);
            break;
          case kInfoMultiple:
            handle_info_multiple(payload);
            break;
          case kFormat:
            handle_format(payload);
            break;
          case kParameter: {
            Cursor in{payload};
            TypedKeyValue kv = parse_typed_value(in);
            if (auto value = to_param(kv.value)) log_.parameters_[kv.key] = *value;
            break;
          }
          case kParameterDefault: {
            Cursor in{payload};
            in.u8();
            parse_typed_value(in);
            break;
          }
          case kFlagBits:
            handle_flag_bits(payload);
            break;
          case kAddLogged:
          case kLogging:
          case kLoggingTagged:
            pos_ = start;
            return;
          default:
            if (is_corrupt_header(static_cast<std::uint16_t>(payload.size()), type)) {
              log_.corrupt_ = true;
              pos_ = start + 1;
            }
            break;
        }
      } catch (const MalformedRecord&) {
        mark_corrupt();
      }
    }
  }

  void read_data(std::size_t read_until) {
    std::uint8_t type = 0;
    std::span<const std::uint8_t> payload;
    std::size_t start = 0;
    while (next_record(type, payload, start)) {
      if (pos_ > read_until) break;
      try {
        switch (type) {
          case kData:
            handle_data(payload);
            break;
          case kInfo:
            handle_info(payload);
            break;
          case kInfoMultiple:
            handle_info_multiple(payload);
            break;
          case kParameter: {
            Cursor in{payload};
            TypedKeyValue kv = parse_typed_value(in);
            if (auto value = to_param(kv.value)) {
              log_.parameter_changes_.push_back({log_.last_timestamp_us_, kv.key, *value});
            }
            break;
          }
          case kParameterDefault: {
            Cursor in{payload};
            in.u8();
            parse_typed_value(in);
            break;
          }
          case kAddLogged:
            handle_add_logged(payload);
            break;
          case kLogging: {
            Cursor in{payload};
            LoggedText text;
            text.level = in.u8();
            text.timestamp_us = in.get<std::uint64_t>();
            text.text = std::string(in.rest());
            log_.logged_text_.push_back(std::move(text));
            break;
          }
          case kLoggingTagged: {
            Cursor in{payload};
            LoggedText text;
            text.level = in.u8();
            text.tag = in.get<std::uint16_t>();
            text.timestamp_us = in.get<std::uint64_t>();
            text.text = std::string(in.rest());
            log_.logged_text_.push_back(std::move(text));
            break;
          }
          case kDropout: {
            Cursor in{payload};
            log_.dropouts_.push_back({log_.last_timestamp_us_, in.get<std::uint16_t>()});
            break;
          }
          case kSync:
            break;
          default:
            if (is_corrupt_header(static_cast<std::uint16_t>(payload.size()), type)) {
              log_.corrupt_ = true;
              pos_ = start + 1;
              if (has_sync_) find_sync(bytes_.size() - pos_, false);
            } else if (has_sync_) {
              // Unknown but plausible record: a sync marker inside it means we
              // were misaligned.
              pos_ -= payload.size();
              find_sync(payload.size(), true);
            }
            break;
        }
      } catch (const MalformedRecord&) {
        mark_corrupt();
      }
    }
  }

  // Searches [pos_, pos_ + window) for a sync marker and moves past it. On
  // failure the position is restored (`restore_end` moves it to the window end).
  void find_sync(std::size_t window, bool restore_end) {
    const auto begin = bytes_.begin() + static_cast<std::ptrdiff_t>(pos_);
    const auto end = begin + static_cast<std::ptrdiff_t>(std::min(window, bytes_.size() - pos_));
    const auto hit = std::search(begin, end, std::begin(kSyncBytes), std::end(kSyncBytes));
    if (hit != end) {
      pos_ = static_cast<std::size_t>(hit - bytes_.begin()) + sizeof(kSyncBytes);
      log_.corrupt_ = true;
      return;
    }
    if (restore_end) {
      pos_ += static_cast<std::size_t>(end - begin);
    } else {
      has_sync_ = false;
    }
  }

  static std::optional<ParamValue> to_param(const InfoValue& value) {
    if (const auto* i = std::get_if<std::int64_t>(&value)) return ParamValue{*i};
    if (const auto* u = std::get_if<std::uint64_t>(&value)) return ParamValue{static_cast<std::int64_t>(*u)};
    if (const auto* d = std::get_if<double>(&value)) return ParamValue{*d};
    return std::nullopt;
  }

  void handle_info(std::span<const std::uint8_t> payload) {
    Cursor in{payload};
    TypedKeyValue kv = parse_typed_value(in);
    log_.info_[kv.key] = std::move(kv.value);
  }

  void handle_info_multiple(std::span<const std::uint8_t> payload) {
    Cursor in{payload};
    const bool continued = in.u8() != 0;
    TypedKeyValue kv = parse_typed_value(in);
    auto& groups = log_.info_multiple_[kv.key];
    if (continued && !groups.empty()) {
      groups.back().push_back(std::move(kv.value));
    } else {
      groups.push_back({std::move(kv.value)});
    }
  }

  void handle_flag_bits(std::span<const std::uint8_t> payload) {
    Cursor in{payload};
    in.need(40);
    const std::uint8_t* incompat = payload.data() + 8;
    if ((incompat[0] & ~1u) != 0 || std::any_of(incompat + 1, incompat + 8, [](std::uint8_t b) { return b != 0; })) {
      throw ParseError(ParseErrorKind::MalformedHeader, "log uses unsupported incompatible format flags");
    }
    if ((incompat[0] & 1u) != 0) {
      for (int i = 0; i < 3; ++i) {
        const auto offset = load<std::uint64_t>(payload.data() + 16 + 8 * i);
        if (offset != 0) appended_offsets_.push_back(offset);
      }
    }
  }

  void handle_format(std::span<const std::uint8_t> payload) {
    Cursor in{payload};
    std::string_view text = in.rest();
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw MalformedRecord{};
    std::string name(text.substr(0, colon));
    std::string_view rest = text.substr(colon + 1);
    rest = rest.substr(0, rest.find(':'));
    formats_[name] = parse_format_fields(rest);
  }

  void flatten(const std::string& type_name, const std::string& prefix, std::vector<FieldDef>& out,
               std::size_t& offset, int depth, std::size_t& budget) const {
    if (budget == 0) {
      throw ParseError(ParseErrorKind::SchemaViolation, "format '" + type_name + "' expands to too many fields");
    }
    --budget;
    if (depth > kMaxNesting) {
      throw ParseError(ParseErrorKind::SchemaViolation, "format '" + type_name + "' nests too deeply");
    }
    auto it = formats_.find(type_name);
    if (it == formats_.end()) {
      throw ParseError(ParseErrorKind::SchemaViolation, "no format definition for '" + type_name + "'");
    }
    for (const RawField& raw : it->second) {
      if (auto kind = parse_scalar_kind(raw.type)) {
        FieldDef field;
        field.name = prefix + raw.name;
        field.kind = *kind;
        field.array_len = raw.is_array ? raw.array_size : 1;
        field.is_array = raw.is_array;
        field.offset = static_cast<std::uint32_t>(offset);
        offset += field.byte_size();
        if (offset > kMaxRecordSize) {
          throw ParseError(ParseErrorKind::SchemaViolation, "format '" + type_name + "' exceeds the record size limit");
        }
        out.push_back(std::move(field));
      } else if (raw.is_array) {
        for (std::uint32_t i = 0; i < raw.array_size; ++i) {
          flatten(raw.type, prefix + raw.name + "[" + std::to_string(i) + "].", out, offset, depth + 1, budget);
        }
      } else {
        flatten(raw.type, prefix + raw.name + ".", out, offset, depth + 1, budget);
      }
    }
  }

  MessageSchema resolve_schema(const std::string& name, std::uint8_t multi_id) const {
    MessageSchema schema;
    schema.name = name;
    schema.multi_id = multi_id;
    std::size_t offset = 0;
    std::size_t budget = kMaxRecordSize;  // every expanded type costs at least one step
    flatten(name, "", schema.fields, offset, 0, budget);
    while (!schema.fields.empty() && schema.fields.back().name.starts_with("_padding")) {
      schema.fields.pop_back();
    }
    schema.record_size =
        schema.fields.empty() ? 0 : schema.fields.back().offset + schema.fields.back().byte_size();
    auto ts = std::find_if(schema.fields.begin(), schema.fields.end(),
                           [](const FieldDef& f) { return f.name == "timestamp"; });
    if (ts == schema.fields.end() || ts->is_array) {
      throw ParseError(ParseErrorKind::SchemaViolation, "message '" + name + "' has no timestamp field");
    }
    schema.timestamp_field = static_cast<std::size_t>(ts - schema.fields.begin());
    return schema;
  }

  void handle_add_logged(std::span<const std::uint8_t> payload) {
    Cursor in{payload};
    const std::uint8_t multi_id = in.u8();
    const auto msg_id = in.get<std::uint16_t>();
    std::string name(in.rest());

    SeriesKey key{name, multi_id};
    MessageSchema schema = resolve_schema(name, multi_id);
    auto [it, inserted] = log_.subscriptions_.try_emplace(key, schema);
    if (!inserted && !(it->second == schema)) {
      throw ParseError(ParseErrorKind::SchemaViolation,
                       "message '" + name + "' subscribed twice with different layouts");
    }
    Subscription sub;
    sub.key = std::move(key);
    sub.schema = &it->second;
    if (auto s = log_.series_.find(sub.key); s != log_.series_.end()) sub.series = &s->second;
    subscriptions_[msg_id] = std::move(sub);
  }

  void handle_data(std::span<const std::uint8_t> payload) {
    Cursor in{payload};
    const auto msg_id = in.get<std::uint16_t>();
    auto it = subscriptions_.find(msg_id);
    if (it == subscriptions_.end()) {
      mark_corrupt();
      return;
    }
    Subscription& sub = it->second;
    const std::size_t data_size = in.remaining();
    if (data_size != sub.schema->record_size) {
      if (options_.strict) {
        throw ParseError(ParseErrorKind::SchemaViolation,
                         "record for '" + sub.key.name + "' is " + std::to_string(data_size) + " bytes, format says " +
                             std::to_string(sub.schema->record_size));
      }
      mark_corrupt();
      return;
    }
    if (sub.series == nullptr) {
      sub.series = &log_.series_.try_emplace(sub.key, *sub.schema).first->second;
    }
    sub.series->append_record(reinterpret_cast<const std::byte*>(payload.data() + 2));
    const std::uint64_t ts = sub.series->timestamps().back();
    if (ts > log_.last_timestamp_us_) log_.last_timestamp_us_ = ts;
  }

  std::span<const std::uint8_t> bytes_;
  ParseOptions options_;
  std::size_t pos_{0};
  bool has_sync_{true};
  FlightLog log_;
  std::unordered_map<std::string, std::vector<RawField>> formats_;
  std::unordered_map<std::uint16_t, Subscription> subscriptions_;
  std::vector<std::uint64_t> appended_offsets_;
};

FlightLog parse_log(std::span<const std::uint8_t> bytes, const ParseOptions& options) {
  return LogReader(bytes, options).run();
}

std::vector<MessageInfo> list_messages(const FlightLog& log) {
  std::vector<MessageInfo> out;
  out.reserve(log.series().size());
  for (const auto& [key, series] : log.series()) {
    if (series.size() == 0) continue;
    out.push_back({key.name, key.multi_id, series.size(), &series.schema()});
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw std::runtime_error("not a readable file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  in.seekg(0, std::ios::end);
  const auto size = in.tellg();
  in.seekg(0, std::ios::beg);
  std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size));
  if (size > 0 && !in.read(reinterpret_cast<char*>(bytes.data()), size)) {
    throw std::runtime_error("cannot read " + path.string());
  }
  return bytes;
}

}  // namespace skytrace::ulog
