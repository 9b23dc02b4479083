#pragma once

#include "graybench/kernels.hpp"
#include "graybench/runner.hpp"
#include "graybench/workloads.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graybench {

struct CompilerSpec {
  std::string id;       // short name used in job labels, e.g. "clang"
  std::string command;  // executable, e.g. "clang-14"

  friend bool operator==(const CompilerSpec&, const CompilerSpec&) = default;
};

struct FlagSet {
  std::string label;  // e.g. "o3"
  std::vector<std::string> flags;

  friend bool operator==(const FlagSet&, const FlagSet&) = default;
};

/// Benchmark matrix. Text form, one directive per line, '#' starts a comment:
///
///   variants = double2d_rm double2d_cm int1d
///   compiler clang = clang
///   flags o3 = -O3 -march=native
///   flags base =
///   include_builtin = true
///   reps = 5
///   sizes = first 14
///   corpus = ./corpus
///
/// Compiler ids and flag labels are restricted to [A-Za-z0-9_.+] so job
/// labels stay parseable.
struct MatrixConfig {
  std::vector<Variant> variants;  // canonical order, no duplicates
  std::vector<CompilerSpec> compilers;
  std::vector<FlagSet> flag_sets;
  bool include_builtin = false;
  unsigned reps = 5;
  SizeSelector sizes;
  std::filesystem::path corpus_dir;

  /// Throws Errc::configuration.
  void validate() const;

  static MatrixConfig parse(std::string_view text);
  /// Canonical text; parse(to_text()) == *this.
  std::string to_text() const;

  friend bool operator==(const MatrixConfig&, const MatrixConfig&) = default;
};

/// Parts of "c-<compiler>-<flags>-<io>-<variant>".
struct JobLabel {
  std::string compiler;
  std::string flags;
  std::string io;
  std::string variant;

  std::string to_string() const;
  /// nullopt for labels outside the grammar (e.g. "hs").
  static std::optional<JobLabel> parse(std::string_view label);

  friend bool operator==(const JobLabel&, const JobLabel&) = default;
};

struct Provenance {
  bool builtin = false;
  std::string compiler_id;  // empty for builtin
  std::string flag_label;   // empty for builtin
  Variant variant = Variant::empty;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// For external jobs the target's executable is relative to the build root:
/// "<label>/<label>".
struct Job {
  TargetSpec target;
  Provenance provenance;

  const std::string& label() const noexcept { return target.label(); }
};

/// External jobs (compilers x flag sets x variants, in that nesting order)
/// followed by one builtin job per variant when include_builtin is set.
std::vector<Job> expand(const MatrixConfig& config);

struct SourceDigest {
  std::string file;
  std::string sha256;  // lowercase hex, or "unknown"

  friend bool operator==(const SourceDigest&, const SourceDigest&) = default;
};

struct ToolchainManifest {
  std::string label;
  std::string timestamp;
  std::string hostname;
  std::string os;
  std::string cpu;
  std::string compiler_id;
  std::string compiler_version;  // verbatim self-report
  std::vector<std::string> flags;
  std::vector<SourceDigest> sources;
  std::string harness_version;
  double timer_resolution = 0.0;

  /// Single-line platform summary for plot titles.
  std::string platform_line() const;

  friend bool operator==(const ToolchainManifest&, const ToolchainManifest&) = default;
};

/// What to describe. An empty compiler_command describes this harness build
/// itself (builtin targets).
struct ManifestProbe {
  std::string label;
  std::string compiler_id;
  std::string compiler_command;
  std::vector<std::string> flags;
  /// Empty with an empty compiler_command: the running executable is digested.
  std::vector<std::filesystem::path> sources;
};

/// Never fails; anything that cannot be determined is recorded as "unknown".
ToolchainManifest capture_manifest(const ManifestProbe& probe);

/// Lowercase hex SHA-256 of a file's bytes. Throws Errc::io.
std::string sha256_file(const std::filesystem::path& path);

/// "key: value" lines, one blank-line separated record per job label.
std::string format_manifests(std::span<const ToolchainManifest> manifests);
std::vector<ToolchainManifest> parse_manifests(std::string_view text);

/// Corpus file names: driver, POSIX I/O unit, and one body per variant.
inline constexpr std::string_view kCorpusDriver = "bench.c";
inline constexpr std::string_view kCorpusIoUnit = "ppm_unix.c";
std::string corpus_body_file(Variant variant);

struct BuildResult {
  std::filesystem::path executable;
  ToolchainManifest manifest;
};

/// Compiles driver + variant body + I/O unit into "<out_dir>/<label>/<label>".
/// Errc::environment if the compiler cannot be found, Errc::io if a corpus
/// source is missing, Errc::build (with diagnostics) if compilation fails.
BuildResult build_external(Variant variant, const CompilerSpec& compiler, const FlagSet& flag_set,
                           const std::filesystem::path& corpus_dir, const std::filesystem::path& out_dir);

struct JobOutcome {
  Job job;
  std::optional<ToolchainManifest> manifest;
  std::vector<SuiteEntry> entries;
  std::string build_error;  // set when the job could not be built
};

using JobProgressFn = std::function<void(const Job&, const SuiteProgress&)>;

/// Builds every external job under `out_dir/build`, then times every job
/// over the configured sizes. Builds all finish before the first timing.
std::vector<JobOutcome> run_matrix(const MatrixConfig& config, const std::filesystem::path& out_dir,
                                   const JobProgressFn& progress = {});

}  // namespace graybench
