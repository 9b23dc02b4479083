#pragma once

#include "graybench/kernels.hpp"
#include "graybench/workloads.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

namespace graybench {

/// What gets timed: a builtin kernel variant, or an external executable
/// honoring `<exe> <input.ppm> <output.pgm>`.
class TargetSpec {
 public:
  enum class Kind { builtin, external };

  static TargetSpec builtin(Variant variant, std::string label = {});
  static TargetSpec external(std::filesystem::path executable, std::string label = {});

  Kind kind() const noexcept { return kind_; }
  /// Set for builtin targets only.
  std::optional<Variant> variant() const noexcept { return variant_; }
  /// Non-empty for external targets only.
  const std::filesystem::path& executable() const noexcept { return executable_; }
  const std::string& label() const noexcept { return label_; }

 private:
  TargetSpec() = default;

  Kind kind_ = Kind::builtin;
  std::optional<Variant> variant_;
  std::filesystem::path executable_;
  std::string label_;
};

struct Sample {
  double seconds = 0.0;
};

struct MeasurementRecord {
  std::string target;
  std::size_t width = 0;
  std::size_t height = 0;
  std::uint64_t pixels = 0;
  unsigned reps = 0;
  double avg = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::vector<Sample> samples;
  /// min is below 100x the timer resolution.
  bool low_confidence = false;
};

/// Builds a record from raw samples (min/avg/max over all of them).
MeasurementRecord summarize(const std::string& target, const WorkloadSpec& spec,
                            std::span<const Sample> samples, double timer_resolution);

/// Reads a monotonic clock. Tests substitute a scripted sequence.
using MonotonicClock = std::function<std::chrono::nanoseconds()>;

MonotonicClock steady_clock_source();

/// Resolution of the clock behind steady_clock_source(), in seconds.
double timer_resolution_seconds();

/// Timing windows hold this exclusively. Work that must never overlap a
/// timing window (compiler invocations, for instance) holds it shared.
std::shared_mutex& measurement_lock();

struct RunnerOptions {
  /// Inputs are materialized and outputs written here.
  std::filesystem::path workdir;
  MonotonicClock clock;
  /// Seconds; <= 0 means query timer_resolution_seconds().
  double timer_resolution = 0.0;
};

struct SuiteEntry {
  WorkloadSpec spec;
  std::optional<MeasurementRecord> record;
  std::string error;  // set when record is empty
};

struct SuiteProgress {
  std::size_t index = 0;
  std::size_t total = 0;
  const SuiteEntry* entry = nullptr;
};

using ProgressFn = std::function<void(const SuiteProgress&)>;

class Runner {
 public:
  explicit Runner(RunnerOptions options);

  double timer_resolution() const noexcept { return resolution_; }
  const std::filesystem::path& workdir() const noexcept { return options_.workdir; }

  /// One timed execution. Builtin targets are timed over read + convert +
  /// write; external targets over spawn to exit.
  Sample time_once(const TargetSpec& target, const std::filesystem::path& input,
                   const std::filesystem::path& output) const;

  /// `reps` back-to-back executions on the same materialized input, no warmup.
  MeasurementRecord run_series(const TargetSpec& target, const WorkloadSpec& spec,
                               unsigned reps = 5) const;

  /// One entry per spec, in order. A failing spec is recorded and the suite
  /// moves on.
  std::vector<SuiteEntry> run_suite(const TargetSpec& target, std::span<const WorkloadSpec> specs,
                                    unsigned reps = 5, const ProgressFn& progress = {}) const;

 private:
  RunnerOptions options_;
  double resolution_;
};

}  // namespace graybench
