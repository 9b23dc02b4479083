#pragma once

#include "graybench/series.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace graybench {

struct PerPixel {
  std::uint64_t pixels = 0;
  double seconds_per_pixel = 0.0;
};

struct Ratio {
  std::uint64_t pixels = 0;
  double ratio = 0.0;
};

struct CacheEstimate {
  std::uint64_t low_bytes = 0;
  std::uint64_t high_bytes = 0;
};

struct KneeReport {
  std::optional<std::uint64_t> knee_pixels;
  std::vector<Ratio> ratios;
  double threshold = 0.0;
  std::optional<CacheEstimate> cache;
};

struct IoSubtraction {
  Series series;
  /// Sizes where total - empty went negative and was clamped to zero.
  std::vector<std::uint64_t> clamped;
};

/// stat / pixels at every point.
std::vector<PerPixel> normalize(const Series& series, Stat stat = Stat::min);

/// Per size, each of avg/min/max becomes max(total - empty, 0). The result
/// is labelled "<total>-minus-io" and its rows are marked derived.
/// Throws Errc::alignment when `empty` lacks a size present in `total`.
IoSubtraction subtract_io(const Series& total, const Series& empty);

/// baseline / contender at each common size; > 1 means the contender is
/// faster. Throws Errc::undefined_ratio on a zero contender value and
/// Errc::insufficient_data when the series share no size.
std::vector<Ratio> speedup(const Series& baseline, const Series& contender, Stat stat = Stat::min);

/// Finds where two traversal orders diverge. ratio = b / a over the common
/// sizes; the knee is the smallest size p such that every common size
/// q >= p has ratio >= threshold. When a knee has a predecessor size, the
/// cache is bracketed between the two working sets.
KneeReport detect_knee(const Series& series_a, const Series& series_b, double threshold = 1.5,
                       Stat stat = Stat::min, std::uint64_t bytes_per_pixel = 4);

/// low = bytes_per_pixel * previous_pixels, high = bytes_per_pixel * knee_pixels.
CacheEstimate estimate_cache_size(std::uint64_t knee_pixels, std::uint64_t previous_pixels,
                                  std::uint64_t bytes_per_pixel = 4);

}  // namespace graybench
