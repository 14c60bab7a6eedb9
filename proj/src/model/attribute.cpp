#include "skytrace/model/attribute.hpp"

#include <algorithm>
#include <charconv>

#include "skytrace/error.hpp"
#include "skytrace/model/derived.hpp"

namespace skytrace::model {

std::string AttributeRef::to_string() const {
  std::string out = message;
  if (multi_id != 0) out += "/" + std::to_string(multi_id);
  out += ":" + field;
  return out;
}

std::optional<AttributeRef> AttributeRef::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) return std::nullopt;
  AttributeRef ref;
  std::string_view head = text.substr(0, colon);
  ref.field = std::string(text.substr(colon + 1));
  if (const auto slash = head.find('/'); slash != std::string_view::npos) {
    std::string_view digits = head.substr(slash + 1);
    unsigned id = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || id > 255 || digits.empty()) return std::nullopt;
    ref.multi_id = static_cast<std::uint8_t>(id);
    head = head.substr(0, slash);
  }
  if (head.empty()) return std::nullopt;
  ref.message = std::string(head);
  return ref;
}

TimeWindow TimeWindow::make(std::uint64_t start_us, std::uint64_t end_us) {
  if (start_us > end_us) {
    throw Error(ErrorCode::InvalidWindow,
                "window start " + std::to_string(start_us) + " is after end " + std::to_string(end_us));
  }
  return {start_us, end_us};
}

std::optional<TimeWindow> intersect(const TimeWindow& a, const TimeWindow& b) {
  const std::uint64_t lo = std::max(a.start_us, b.start_us);
  const std::uint64_t hi = std::min(a.end_us, b.end_us);
  if (lo > hi) return std::nullopt;
  return TimeWindow{lo, hi};
}

bool has_column(const ulog::MessageSchema& schema, std::string_view column) {
  for (const ulog::FieldDef& field : schema.fields) {
    if (!field.is_array) {
      if (field.name == column) return true;
      continue;
    }
    if (!column.starts_with(field.name) || column.size() < field.name.size() + 3) continue;
    std::string_view idx = column.substr(field.name.size());
    if (idx.front() != '[' || idx.back() != ']') continue;
    idx = idx.substr(1, idx.size() - 2);
    std::uint32_t i = 0;
    auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), i);
    if (ec == std::errc{} && ptr == idx.data() + idx.size() && i < field.array_len) return true;
  }
  return false;
}

std::vector<std::string> column_names(const ulog::MessageSchema& schema) {
  std::vector<std::string> out;
  for (const ulog::FieldDef& field : schema.fields) {
    if (!field.is_array) {
      out.push_back(field.name);
      continue;
    }
    for (std::uint32_t i = 0; i < field.array_len; ++i) out.push_back(field.name + "[" + std::to_string(i) + "]");
  }
  return out;
}

bool resolves(const ulog::FlightLog& log, const AttributeRef& ref) {
  auto it = log.subscriptions().find(ref.key());
  if (it == log.subscriptions().end()) return false;
  if (has_column(it->second, ref.field)) return true;
  if (auto derived = parse_derived(ref.field)) {
    for (int i = 0; i < 4; ++i) {
      if (!has_column(it->second, derived->source + "[" + std::to_string(i) + "]")) return false;
    }
    return true;
  }
  return false;
}

}  // namespace skytrace::model
