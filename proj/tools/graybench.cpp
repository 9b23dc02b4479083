// graybench command-line front end. The only place that writes to the terminal.

#include "graybench/analysis.hpp"
#include "graybench/error.hpp"
#include "graybench/imagekit.hpp"
#include "graybench/matrix.hpp"
#include "graybench/report.hpp"
#include "graybench/runner.hpp"
#include "graybench/workloads.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace graybench;

namespace {

constexpr int kUsageError = 1;
constexpr int kRuntimeError = 2;

// "fixture:NAME" loads a shipped table; anything else is a CSV path.
Series load_series(const std::string& arg) {
  constexpr std::string_view kPrefix = "fixture:";
  if (arg.rfind(kPrefix, 0) == 0) return load_fixture(arg.substr(kPrefix.size()));
  return read_csv(arg);
}

fs::path manifest_path_for(const fs::path& csv) {
  fs::path p = csv;
  p.replace_extension(".manifest");
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string read_text(const fs::path& path) {
  const auto bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

void print_progress(const std::string& label, const SuiteProgress& p) {
  const SuiteEntry& e = *p.entry;
  std::cerr << "[" << (p.index + 1) << "/" << p.total << "] " << label << " " << e.spec.size_label() << ": ";
  if (e.record) {
    std::cerr << "min " << format_seconds(e.record->min) << " s";
    if (e.record->low_confidence) std::cerr << " (low-confidence)";
  } else {
    std::cerr << "FAILED: " << e.error;
  }
  std::cerr << "\n";
}

// Runs a suite, writes CSV + manifest. Returns the exit status.
int run_and_record(const TargetSpec& target, const ManifestProbe& probe, const SizeSelector& sizes,
                   unsigned reps, const fs::path& workdir, const fs::path& out_csv) {
  fs::create_directories(workdir);
  const Runner runner(RunnerOptions{workdir, {}, 0.0});
  const auto specs = sizes.select();
  const auto entries = runner.run_suite(target, specs, reps, [&](const SuiteProgress& p) {
    print_progress(target.label(), p);
  });
  std::vector<MeasurementRecord> records;
  std::size_t failures = 0;
  for (const auto& e : entries) {
    if (e.record) records.push_back(*e.record);
    else ++failures;
  }
  if (out_csv.has_parent_path()) fs::create_directories(out_csv.parent_path());
  write_csv(Series::from_records(target.label(), records), out_csv);
  const ToolchainManifest manifest = capture_manifest(probe);
  write_text(manifest_path_for(out_csv), format_manifests(std::span(&manifest, 1)));
  std::cerr << "wrote " << out_csv.string() << " and " << manifest_path_for(out_csv).string() << "\n";
  if (failures) {
    std::cerr << failures << " of " << entries.size() << " sizes failed\n";
    return kRuntimeError;
  }
  return 0;
}

void print_ratios(const std::vector<Ratio>& ratios) {
  std::cout << "pixels,ratio\n";
  for (const auto& r : ratios) std::cout << r.pixels << "," << r.ratio << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graybench: grayscale-conversion benchmark harness and analysis toolkit", "graybench"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  // sizes
  auto* sizes_cmd = app.add_subcommand("sizes", "Print the reference workload table as CSV");

  // fixtures
  auto* fixtures_cmd = app.add_subcommand("fixtures", "List the shipped result tables");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Materialize workload PPM files");
  std::string gen_dir;
  std::string gen_sizes = "all";
  gen_cmd->add_option("--dir", gen_dir, "Output directory")->required();
  gen_cmd->add_option("--sizes", gen_sizes, "Size selector: all | first N | max P | pixels P...")
      ->capture_default_str();

  // run / baseline
  struct RunArgs {
    std::string variant;
    std::string exe;
    std::string label;
    std::string sizes = "all";
    unsigned reps = 5;
    std::string workdir = "graybench-work";
    std::string out;
  };
  RunArgs run_args;
  RunArgs baseline_args;
  auto add_run_options = [](CLI::App* cmd, RunArgs& a) {
    cmd->add_option("--label", a.label, "Series label (defaults from the target)");
    cmd->add_option("--sizes", a.sizes, "Size selector: all | first N | max P | pixels P...")
        ->capture_default_str();
    cmd->add_option("--reps", a.reps, "Repetitions per size")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--workdir", a.workdir, "Directory for inputs and outputs")->capture_default_str();
    cmd->add_option("--out", a.out, "Result CSV (a .manifest is written next to it)")->required();
  };
  auto* run_cmd = app.add_subcommand("run", "Time a target over reference sizes");
  auto* variant_opt = run_cmd->add_option("--variant", run_args.variant,
                                           "Builtin variant: double2d_rm double2d_cm double1d float1d int1d empty");
  auto* exe_opt = run_cmd->add_option("--exe", run_args.exe, "External executable: <exe> in.ppm out.pgm");
  variant_opt->excludes(exe_opt);
  run_cmd->require_option(1, 0);
  add_run_options(run_cmd, run_args);
  auto* baseline_cmd = app.add_subcommand("baseline", "Time the I/O-only empty variant");
  add_run_options(baseline_cmd, baseline_args);

  // matrix / config
  auto* matrix_cmd = app.add_subcommand("matrix", "Expand a matrix config, build external targets and time all jobs");
  std::string matrix_config;
  std::string matrix_out;
  bool matrix_dry_run = false;
  matrix_cmd->add_option("config", matrix_config, "Matrix configuration file")->required()->check(CLI::ExistingFile);
  matrix_cmd->add_option("--out", matrix_out, "Output directory")->required();
  matrix_cmd->add_flag("--dry-run", matrix_dry_run, "Only list the expanded jobs");

  auto* config_cmd = app.add_subcommand("config", "Matrix configuration utilities");
  config_cmd->require_subcommand(1);
  auto* config_print = config_cmd->add_subcommand("print", "Parse a config and print its canonical form");
  std::string config_file;
  config_print->add_option("file", config_file, "Matrix configuration file")->required()->check(CLI::ExistingFile);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Derived quantities over result CSVs (or fixture:NAME)");
  analyze_cmd->require_subcommand(1);
  std::string stat_name = "min";
  std::string csv_a;
  std::string csv_b;
  std::string analyze_out;
  double threshold = 1.5;
  std::uint64_t bytes_per_pixel = 4;

  auto* normalize_cmd = analyze_cmd->add_subcommand("normalize", "Seconds per pixel");
  normalize_cmd->add_option("series", csv_a)->required();
  normalize_cmd->add_option("--stat", stat_name)->capture_default_str();

  auto* subtract_cmd = analyze_cmd->add_subcommand("subtract", "Subtract the I/O-only series from a total series");
  subtract_cmd->add_option("total", csv_a)->required();
  subtract_cmd->add_option("empty", csv_b)->required();
  subtract_cmd->add_option("--out", analyze_out, "Write the derived CSV here instead of stdout");

  auto* speedup_cmd = analyze_cmd->add_subcommand("speedup", "baseline / contender per common size");
  speedup_cmd->add_option("baseline", csv_a)->required();
  speedup_cmd->add_option("contender", csv_b)->required();
  speedup_cmd->add_option("--stat", stat_name)->capture_default_str();

  auto* knee_cmd = analyze_cmd->add_subcommand("knee", "Traversal-order divergence point and cache bracket");
  knee_cmd->add_option("a", csv_a, "Reference series (e.g. row-major)")->required();
  knee_cmd->add_option("b", csv_b, "Diverging series (e.g. column-major)")->required();
  knee_cmd->add_option("--threshold", threshold)->capture_default_str();
  knee_cmd->add_option("--stat", stat_name)->capture_default_str();
  knee_cmd->add_option("--bytes-per-pixel", bytes_per_pixel)->capture_default_str();

  // report
  auto* report_cmd = app.add_subcommand("report", "Emit gnuplot script/data and print summary tables");
  std::vector<std::string> report_inputs;
  std::string report_out;
  std::string report_manifest;
  GnuplotOptions gp_options;
  std::string report_stat = "min";
  report_cmd->add_option("series", report_inputs, "Result CSVs or fixture:NAME")->required();
  report_cmd->add_option("--out", report_out, "Directory for plot.gp and data files")->required();
  report_cmd->add_flag("--normalized", gp_options.normalized, "Plot seconds per pixel");
  report_cmd->add_flag("--logx", gp_options.logx, "Logarithmic x axis");
  report_cmd->add_flag("--logy", gp_options.logy, "Logarithmic y axis");
  report_cmd->add_option("--title", gp_options.title)->capture_default_str();
  report_cmd->add_option("--manifest", report_manifest,
                         "Manifest providing the platform line (default: next to the first CSV)");
  report_cmd->add_option("--stat", report_stat)->capture_default_str();

  // manifest
  auto* manifest_cmd = app.add_subcommand("manifest", "Print a toolchain manifest for this host");
  ManifestProbe probe;
  manifest_cmd->add_option("--label", probe.label);
  manifest_cmd->add_option("--compiler", probe.compiler_command, "Compiler command (default: this harness build)");
  manifest_cmd->add_option("--compiler-id", probe.compiler_id);
  manifest_cmd->add_option("--flags", probe.flags)->delimiter(' ');
  std::vector<std::string> manifest_sources;
  manifest_cmd->add_option("--source", manifest_sources, "Source files to digest");

  if (argc <= 1) {
    std::cerr << app.help();
    return kUsageError;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    if (*sizes_cmd) {
      std::cout << reference_sizes_csv();
      return 0;
    }
    if (*fixtures_cmd) {
      std::cout << "# " << fixture_directory().string() << "\n";
      for (const auto& name : fixture_names()) std::cout << name << "\n";
      return 0;
    }
    if (*gen_cmd) {
      fs::create_directories(gen_dir);
      for (const auto& spec : SizeSelector::parse(gen_sizes).select()) {
        std::cout << materialize(spec, gen_dir).string() << "\n";
      }
      return 0;
    }
    if (*run_cmd || *baseline_cmd) {
      const RunArgs& a = *run_cmd ? run_args : baseline_args;
      std::optional<TargetSpec> target;
      ManifestProbe run_probe;
      if (*baseline_cmd) {
        target = TargetSpec::builtin(Variant::empty, a.label);
      } else if (a.variant.empty() && a.exe.empty()) {
        throw Error(Errc::argument, "run needs --variant or --exe");
      } else if (!a.variant.empty()) {
        target = TargetSpec::builtin(parse_variant(a.variant), a.label);
      } else {
        target = TargetSpec::external(fs::absolute(a.exe), a.label);
        run_probe.compiler_id = "unknown";
        run_probe.compiler_command = "";
        run_probe.flags = {"unknown"};
        run_probe.sources = {fs::absolute(a.exe)};
      }
      run_probe.label = target->label();
      return run_and_record(*target, run_probe, SizeSelector::parse(a.sizes), a.reps, a.workdir, a.out);
    }
    if (*config_print) {
      std::cout << MatrixConfig::parse(read_text(config_file)).to_text();
      return 0;
    }
    if (*matrix_cmd) {
      MatrixConfig config = MatrixConfig::parse(read_text(matrix_config));
      if (!config.corpus_dir.empty() && config.corpus_dir.is_relative()) {
        config.corpus_dir = fs::absolute(fs::path(matrix_config).parent_path() / config.corpus_dir);
      }
      const auto jobs = expand(config);
      if (matrix_dry_run) {
        for (const auto& job : jobs) std::cout << job.label() << "\n";
        return 0;
      }
      const fs::path out_dir = fs::absolute(matrix_out);
      fs::create_directories(out_dir);
      const auto outcomes = run_matrix(config, out_dir, [](const Job& job, const SuiteProgress& p) {
        print_progress(job.label(), p);
      });
      int status = 0;
      std::vector<ToolchainManifest> all;
      for (const auto& o : outcomes) {
        if (!o.build_error.empty()) {
          std::cerr << o.job.label() << ": " << o.build_error << "\n";
          status = kRuntimeError;
          continue;
        }
        std::vector<MeasurementRecord> records;
        for (const auto& e : o.entries) {
          if (e.record) records.push_back(*e.record);
          else status = kRuntimeError;
        }
        const fs::path csv = out_dir / (o.job.label() + ".csv");
        write_csv(Series::from_records(o.job.label(), records), csv);
        write_text(manifest_path_for(csv), format_manifests(std::span(&*o.manifest, 1)));
        all.push_back(*o.manifest);
        std::cout << csv.string() << "\n";
      }
      write_text(out_dir / "matrix.manifest", format_manifests(all));
      return status;
    }
    if (*normalize_cmd) {
      const Series s = load_series(csv_a);
      std::cout << "pixels,seconds_per_pixel\n";
      for (const auto& p : normalize(s, parse_stat(stat_name))) {
        std::cout << p.pixels << "," << p.seconds_per_pixel << "\n";
      }
      return 0;
    }
    if (*subtract_cmd) {
      const auto result = subtract_io(load_series(csv_a), load_series(csv_b));
      for (auto p : result.clamped) {
        std::cerr << "warning: I/O time exceeds total at " << p << " pixels; clamped to 0\n";
      }
      if (analyze_out.empty()) {
        emit_csv(result.series, std::cout);
      } else {
        write_csv(result.series, analyze_out);
        std::cerr << "wrote " << analyze_out << "\n";
      }
      return 0;
    }
    if (*speedup_cmd) {
      print_ratios(speedup(load_series(csv_a), load_series(csv_b), parse_stat(stat_name)));
      return 0;
    }
    if (*knee_cmd) {
      const auto report = detect_knee(load_series(csv_a), load_series(csv_b), threshold, parse_stat(stat_name),
                                      bytes_per_pixel);
      print_ratios(report.ratios);
      std::cout << "threshold " << report.threshold << "\n";
      if (report.knee_pixels) std::cout << "knee " << *report.knee_pixels << "\n";
      else std::cout << "knee none\n";
      if (report.cache) {
        std::cout << "cache_bytes_low " << report.cache->low_bytes << "\n"
                  << "cache_bytes_high " << report.cache->high_bytes << "\n";
      }
      return 0;
    }
    if (*report_cmd) {
      std::vector<Series> series;
      for (const auto& in : report_inputs) series.push_back(load_series(in));
      gp_options.stat = parse_stat(report_stat);
      fs::path manifest_file = report_manifest;
      if (manifest_file.empty() && report_inputs.front().rfind("fixture:", 0) != 0) {
        manifest_file = manifest_path_for(report_inputs.front());
      }
      if (!manifest_file.empty() && fs::exists(manifest_file)) {
        const auto manifests = parse_manifests(read_text(manifest_file));
        if (!manifests.empty()) gp_options.platform = manifests.front().platform_line();
      } else if (!report_manifest.empty()) {
        throw Error(Errc::io, report_manifest + ": manifest not found");
      } else {
        gp_options.platform = capture_manifest(ManifestProbe{}).platform_line();
      }
      fs::create_directories(report_out);
      write_gnuplot(emit_gnuplot(series, gp_options), report_out);
      for (const auto& s : series) std::cout << format_table(s) << "\n";
      std::cerr << "wrote " << (fs::path(report_out) / "plot.gp").string() << "\n";
      return 0;
    }
    if (*manifest_cmd) {
      for (const auto& s : manifest_sources) probe.sources.emplace_back(s);
      const ToolchainManifest m = capture_manifest(probe);
      std::cout << format_manifests(std::span(&m, 1));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return e.code() == Errc::argument || e.code() == Errc::configuration ? kUsageError : kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  std::cerr << app.help();
  return kUsageError;
}
