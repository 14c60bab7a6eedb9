#include "skytrace/ulog/flight_log.hpp"

#include <algorithm>
#include <numeric>

namespace skytrace::ulog {

void Column::permute(std::span<const std::size_t> order) {
  const std::size_t width = scalar_size(kind_);
  std::vector<std::byte> out(bytes_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::copy_n(bytes_.data() + order[i] * width, width, out.data() + i * width);
  }
  bytes_ = std::move(out);
}

MessageSeries::MessageSeries(MessageSchema schema) : schema_(std::move(schema)) {
  for (const FieldDef& field : schema_.fields) {
    const std::size_t width = scalar_size(field.kind);
    for (std::uint32_t i = 0; i < field.array_len; ++i) {
      std::string name = field.is_array ? field.name + "[" + std::to_string(i) + "]" : field.name;
      by_name_.emplace(name, columns_.size());
      columns_.emplace_back(std::move(name), field.kind);
      column_offsets_.push_back(static_cast<std::uint32_t>(field.offset + i * width));
    }
  }
}

const Column* MessageSeries::find_column(std::string_view name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &columns_[it->second];
}

void MessageSeries::append_record(const std::byte* record) {
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    columns_[c].append_raw(record + column_offsets_[c]);
  }
  const FieldDef& ts = schema_.fields[schema_.timestamp_field];
  timestamps_.push_back(static_cast<std::uint64_t>(load_as_int64(ts.kind, record + ts.offset)));
}

bool MessageSeries::sort_by_time() {
  if (std::is_sorted(timestamps_.begin(), timestamps_.end())) return false;
  std::vector<std::size_t> order(timestamps_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [this](std::size_t a, std::size_t b) { return timestamps_[a] < timestamps_[b]; });
  std::vector<std::uint64_t> sorted(timestamps_.size());
  for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = timestamps_[order[i]];
  timestamps_ = std::move(sorted);
  for (Column& column : columns_) column.permute(order);
  return true;
}

const MessageSeries* FlightLog::find_series(const SeriesKey& key) const {
  auto it = series_.find(key);
  return it == series_.end() ? nullptr : &it->second;
}

}  // namespace skytrace::ulog
