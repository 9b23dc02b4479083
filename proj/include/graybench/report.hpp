#pragma once

#include "graybench/series.hpp"

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace graybench {

inline constexpr std::string_view kCsvHeader = "pixels,avg,min,max,width,height";

/// Shortest decimal that reads back as the same double, never in exponent form.
std::string format_seconds(double value);

/// Writes the header and one row per point. Returns the number of bytes written.
std::size_t emit_csv(const Series& series, std::ostream& out);
std::size_t write_csv(const Series& series, const std::filesystem::path& path);

/// Header columns may appear in any order and any letter case; all six are
/// required (Errc::schema). Rows must be strictly ascending (Errc::ordering).
Series parse_csv(std::string_view text, std::string label);
/// Label is the file stem.
Series read_csv(const std::filesystem::path& path);

/// $GRAYBENCH_FIXTURES when set, otherwise the fixture directory shipped
/// with the sources.
std::filesystem::path fixture_directory();
/// Loads "<fixture_directory()>/<name>.csv", e.g. "hs" or "c-clang-o3-unix-double2d".
Series load_fixture(std::string_view name);
/// Names of every fixture table, sorted.
std::vector<std::string> fixture_names();

struct GnuplotOptions {
  bool normalized = false;  // plot seconds per pixel
  bool logx = false;
  bool logy = false;
  std::string title = "Grayscale conversion";
  /// Appended as a second title line, see ToolchainManifest::platform_line().
  std::string platform;
  Stat stat = Stat::min;
  std::string image_name = "plot.png";
};

struct GnuplotDataFile {
  std::string name;
  std::string text;
};

struct GnuplotBundle {
  std::string script;
  std::vector<GnuplotDataFile> data_files;
};

/// One whitespace-separated "<pixels> <value>" data file per series plus a
/// script plotting them all. Throws Errc::argument for an empty set.
GnuplotBundle emit_gnuplot(std::span<const Series> series, const GnuplotOptions& options);

/// Writes the script as "<directory>/<script_name>" and the data files next
/// to it.
void write_gnuplot(const GnuplotBundle& bundle, const std::filesystem::path& directory,
                   std::string_view script_name = "plot.gp");

/// Fixed-width text table of a series, one line per point.
std::string format_table(const Series& series);

}  // namespace graybench
