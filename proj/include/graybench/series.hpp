#pragma once

#include "graybench/runner.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graybench {

enum class Stat { min, avg, max };

std::string_view to_string(Stat stat) noexcept;
Stat parse_stat(std::string_view name);

/// One row of a result table, columns in the order pixels, avg, min, max,
/// width, height.
struct ResultRow {
  std::uint64_t pixels = 0;
  double avg = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::uint64_t width = 0;
  std::uint64_t height = 0;
  /// Produced by an analysis step rather than measured.
  bool derived = false;

  double get(Stat stat) const noexcept;

  static ResultRow from(const MeasurementRecord& record);

  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// One curve: rows strictly ascending by pixel count.
class Series {
 public:
  Series() = default;
  /// Throws Errc::ordering if pixel counts are not strictly increasing.
  Series(std::string label, std::vector<ResultRow> rows);

  /// Sorts the records by pixel count first.
  static Series from_records(std::string label, std::span<const MeasurementRecord> records);

  const std::string& label() const noexcept { return label_; }
  std::span<const ResultRow> rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  const ResultRow* find(std::uint64_t pixels) const noexcept;

  friend bool operator==(const Series&, const Series&) = default;

 private:
  std::string label_;
  std::vector<ResultRow> rows_;
};

}  // namespace graybench
