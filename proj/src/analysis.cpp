#include "graybench/analysis.hpp"

#include "graybench/error.hpp"

#include <algorithm>
#include <string>

namespace graybench {

namespace {

struct Aligned {
  const ResultRow* a;
  const ResultRow* b;
};

std::vector<Aligned> common_sizes(const Series& a, const Series& b) {
  std::vector<Aligned> out;
  for (const ResultRow& row : a.rows()) {
    if (const ResultRow* other = b.find(row.pixels)) out.push_back({&row, other});
  }
  return out;
}

double ratio_at(const ResultRow& numerator, const ResultRow& denominator, Stat stat) {
  const double d = denominator.get(stat);
  if (d == 0.0) {
    throw Error(Errc::undefined_ratio,
                "ratio undefined at " + std::to_string(denominator.pixels) + " pixels: divisor is zero");
  }
  return numerator.get(stat) / d;
}

}  // namespace

std::vector<PerPixel> normalize(const Series& series, Stat stat) {
  std::vector<PerPixel> out;
  out.reserve(series.size());
  for (const ResultRow& row : series.rows()) {
    out.push_back({row.pixels, row.get(stat) / static_cast<double>(row.pixels)});
  }
  return out;
}

IoSubtraction subtract_io(const Series& total, const Series& empty) {
  IoSubtraction result;
  std::vector<ResultRow> rows;
  rows.reserve(total.size());
  for (const ResultRow& t : total.rows()) {
    const ResultRow* e = empty.find(t.pixels);
    if (!e) {
      throw Error(Errc::alignment, "I/O baseline '" + empty.label() + "' has no measurement at " +
                                       std::to_string(t.pixels) + " pixels");
    }
    bool clamped = false;
    auto minus = [&](double x, double y) {
      const double d = x - y;
      if (d < 0.0) {
        clamped = true;
        return 0.0;
      }
      return d;
    };
    ResultRow r = t;
    r.avg = minus(t.avg, e->avg);
    r.min = minus(t.min, e->min);
    r.max = minus(t.max, e->max);
    r.derived = true;
    if (clamped) result.clamped.push_back(t.pixels);
    rows.push_back(r);
  }
  result.series = Series(total.label() + "-minus-io", std::move(rows));
  return result;
}

std::vector<Ratio> speedup(const Series& baseline, const Series& contender, Stat stat) {
  const auto aligned = common_sizes(baseline, contender);
  if (aligned.empty()) {
    throw Error(Errc::insufficient_data, "'" + baseline.label() + "' and '" + contender.label() +
                                             "' share no input size");
  }
  std::vector<Ratio> out;
  out.reserve(aligned.size());
  for (const auto& [b, c] : aligned) out.push_back({b->pixels, ratio_at(*b, *c, stat)});
  return out;
}

KneeReport detect_knee(const Series& series_a, const Series& series_b, double threshold, Stat stat,
                       std::uint64_t bytes_per_pixel) {
  if (!(threshold > 1.0)) throw Error(Errc::argument, "knee threshold must be greater than 1");
  const auto aligned = common_sizes(series_a, series_b);
  if (aligned.size() < 2) {
    throw Error(Errc::insufficient_data, "knee detection needs at least 2 common sizes, got " +
                                             std::to_string(aligned.size()));
  }
  KneeReport report;
  report.threshold = threshold;
  report.ratios.reserve(aligned.size());
  for (const auto& [a, b] : aligned) report.ratios.push_back({a->pixels, ratio_at(*b, *a, stat)});

  // Walk down from the largest size while the ratio stays above threshold.
  std::size_t first_persistent = report.ratios.size();
  while (first_persistent > 0 && report.ratios[first_persistent - 1].ratio >= threshold) --first_persistent;
  if (first_persistent == report.ratios.size()) return report;

  report.knee_pixels = report.ratios[first_persistent].pixels;
  if (first_persistent > 0) {
    report.cache = estimate_cache_size(*report.knee_pixels, report.ratios[first_persistent - 1].pixels,
                                       bytes_per_pixel);
  }
  return report;
}

CacheEstimate estimate_cache_size(std::uint64_t knee_pixels, std::uint64_t previous_pixels,
                                  std::uint64_t bytes_per_pixel) {
  if (previous_pixels >= knee_pixels) {
    throw Error(Errc::argument, "previous size " + std::to_string(previous_pixels) +
                                    " must be smaller than knee size " + std::to_string(knee_pixels));
  }
  if (bytes_per_pixel == 0) throw Error(Errc::argument, "bytes_per_pixel must be positive");
  return {bytes_per_pixel * previous_pixels, bytes_per_pixel * knee_pixels};
}

}  // namespace graybench
