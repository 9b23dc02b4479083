#include "graybench/runner.hpp"

#include "graybench/error.hpp"
#include "graybench/imagekit.hpp"
#include "process.hpp"

#include <time.h>

#include <algorithm>
#include <mutex>
#include <numeric>

namespace graybench {

namespace {

double span_seconds(std::chrono::nanoseconds start, std::chrono::nanoseconds stop) {
  // A scripted or misbehaving clock must never yield a negative sample.
  if (stop < start) return 0.0;
  return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

TargetSpec TargetSpec::builtin(Variant variant, std::string label) {
  TargetSpec t;
  t.kind_ = Kind::builtin;
  t.variant_ = variant;
  t.label_ = label.empty() ? "builtin-" + std::string(to_string(variant)) : std::move(label);
  return t;
}

TargetSpec TargetSpec::external(std::filesystem::path executable, std::string label) {
  if (executable.empty()) throw Error(Errc::argument, "external target needs an executable path");
  TargetSpec t;
  t.kind_ = Kind::external;
  t.label_ = label.empty() ? executable.filename().string() : std::move(label);
  t.executable_ = std::move(executable);
  return t;
}

MeasurementRecord summarize(const std::string& target, const WorkloadSpec& spec,
                            std::span<const Sample> samples, double timer_resolution) {
  if (samples.empty()) throw Error(Errc::argument, "cannot summarize zero samples");
  MeasurementRecord rec;
  rec.target = target;
  rec.width = spec.width;
  rec.height = spec.height;
  rec.pixels = spec.pixels();
  rec.reps = static_cast<unsigned>(samples.size());
  rec.samples.assign(samples.begin(), samples.end());
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                            [](const Sample& a, const Sample& b) { return a.seconds < b.seconds; });
  rec.min = lo->seconds;
  rec.max = hi->seconds;
  const double sum = std::accumulate(samples.begin(), samples.end(), 0.0,
                                     [](double acc, const Sample& s) { return acc + s.seconds; });
  rec.avg = std::clamp(sum / static_cast<double>(samples.size()), rec.min, rec.max);
  rec.low_confidence = rec.min < 100.0 * timer_resolution;
  return rec;
}

MonotonicClock steady_clock_source() {
  return [] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now().time_since_epoch());
  };
}

double timer_resolution_seconds() {
  timespec res{};
  if (::clock_getres(CLOCK_MONOTONIC, &res) != 0) return 1e-9;
  const double seconds = static_cast<double>(res.tv_sec) + static_cast<double>(res.tv_nsec) * 1e-9;
  return seconds > 0.0 ? seconds : 1e-9;
}

std::shared_mutex& measurement_lock() {
  static std::shared_mutex lock;
  return lock;
}

Runner::Runner(RunnerOptions options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = steady_clock_source();
  resolution_ = options_.timer_resolution > 0.0 ? options_.timer_resolution : timer_resolution_seconds();
  if (options_.workdir.empty()) options_.workdir = std::filesystem::current_path();
}

Sample Runner::time_once(const TargetSpec& target, const std::filesystem::path& input,
                         const std::filesystem::path& output) const {
  if (!std::filesystem::is_regular_file(input)) {
    throw Error(Errc::io, input.string() + ": input file not found");
  }
  std::unique_lock lock(measurement_lock());

  if (target.kind() == TargetSpec::Kind::builtin) {
    const Variant variant = *target.variant();
    const auto start = options_.clock();
    const Image image = read_ppm(input);
    write_pgm(output, run_variant(variant, image));
    const auto stop = options_.clock();
    return Sample{span_seconds(start, stop)};
  }

  detail::ProcessResult proc;
  try {
    proc = detail::run_process({target.executable().string(), input.string(), output.string()},
                               options_.clock);
  } catch (const Error& e) {
    throw Error(Errc::target_failure, target.label() + ": " + e.what());
  }
  if (!proc.ok()) {
    throw Error(Errc::target_failure,
                target.label() + ": " + proc.describe_status() + (proc.err.empty() ? "" : "\n" + proc.err));
  }
  return Sample{span_seconds(proc.started, proc.exited)};
}

MeasurementRecord Runner::run_series(const TargetSpec& target, const WorkloadSpec& spec,
                                     unsigned reps) const {
  if (reps == 0) throw Error(Errc::argument, "reps must be at least 1");
  const auto input = materialize(spec, options_.workdir);
  const auto output = options_.workdir / (target.label() + "-" + spec.size_label() + ".pgm");
  std::vector<Sample> samples;
  samples.reserve(reps);
  for (unsigned i = 0; i < reps; ++i) samples.push_back(time_once(target, input, output));
  return summarize(target.label(), spec, samples, resolution_);
}

std::vector<SuiteEntry> Runner::run_suite(const TargetSpec& target, std::span<const WorkloadSpec> specs,
                                          unsigned reps, const ProgressFn& progress) const {
  if (specs.empty()) throw Error(Errc::argument, "run_suite needs at least one workload");
  std::vector<SuiteEntry> entries;
  entries.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    SuiteEntry entry{specs[i], std::nullopt, {}};
    try {
      entry.record = run_series(target, specs[i], reps);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    entries.push_back(std::move(entry));
    if (progress) progress(SuiteProgress{i, specs.size(), &entries.back()});
  }
  return entries;
}

}  // namespace graybench
