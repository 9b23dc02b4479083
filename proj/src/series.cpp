#include "graybench/series.hpp"

#include "graybench/error.hpp"

#include <algorithm>

namespace graybench {

std::string_view to_string(Stat stat) noexcept {
  switch (stat) {
    case Stat::min: return "min";
    case Stat::avg: return "avg";
    case Stat::max: return "max";
  }
  return "min";
}

Stat parse_stat(std::string_view name) {
  if (name == "min") return Stat::min;
  if (name == "avg") return Stat::avg;
  if (name == "max") return Stat::max;
  throw Error(Errc::argument, "unknown statistic '" + std::string(name) + "' (expected min, avg or max)");
}

double ResultRow::get(Stat stat) const noexcept {
  switch (stat) {
    case Stat::min: return min;
    case Stat::avg: return avg;
    case Stat::max: return max;
  }
  return min;
}

ResultRow ResultRow::from(const MeasurementRecord& record) {
  return ResultRow{record.pixels, record.avg, record.min, record.max, record.width, record.height, false};
}

Series::Series(std::string label, std::vector<ResultRow> rows)
    : label_(std::move(label)), rows_(std::move(rows)) {
  for (std::size_t i = 1; i < rows_.size(); ++i) {
    if (rows_[i].pixels <= rows_[i - 1].pixels) {
      throw Error(Errc::ordering, label_ + ": pixel counts must be strictly increasing (" +
                                      std::to_string(rows_[i - 1].pixels) + " then " +
                                      std::to_string(rows_[i].pixels) + ")");
    }
  }
}

Series Series::from_records(std::string label, std::span<const MeasurementRecord> records) {
  std::vector<ResultRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back(ResultRow::from(r));
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) { return a.pixels < b.pixels; });
  return Series(std::move(label), std::move(rows));
}

const ResultRow* Series::find(std::uint64_t pixels) const noexcept {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), pixels,
                             [](const ResultRow& r, std::uint64_t p) { return r.pixels < p; });
  return it != rows_.end() && it->pixels == pixels ? &*it : nullptr;
}

}  // namespace graybench
