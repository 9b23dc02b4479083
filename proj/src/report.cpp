#include "graybench/report.hpp"

#include "graybench/error.hpp"
#include "graybench/imagekit.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#ifndef GRAYBENCH_FIXTURE_DIR
#define GRAYBENCH_FIXTURE_DIR "fixtures"
#endif

namespace graybench {

namespace {

constexpr std::array<std::string_view, 6> kColumns = {"pixels", "avg", "min", "max", "width", "height"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::string_view column, std::size_t line_no) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw Error(Errc::schema, "CSV line " + std::to_string(line_no) + ": bad " + std::string(column) +
                                  " value '" + std::string(field) + "'");
  }
  return value;
}

std::string format_general(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string data_file_name(std::string_view label) {
  std::string name;
  for (char c : label) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    name += ok ? c : '_';
  }
  if (name.empty()) name = "series";
  return name + ".dat";
}

std::string gnuplot_quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_seconds(double value) {
  char buf[512];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc()) return format_general(value);
  return std::string(buf, ptr);
}

std::size_t emit_csv(const Series& series, std::ostream& out) {
  std::string text(kCsvHeader);
  text += '\n';
  for (const ResultRow& r : series.rows()) {
    text += std::to_string(r.pixels);
    text += ',' + format_seconds(r.avg);
    text += ',' + format_seconds(r.min);
    text += ',' + format_seconds(r.max);
    text += ',' + std::to_string(r.width);
    text += ',' + std::to_string(r.height);
    text += '\n';
  }
  out << text;
  if (!out) throw Error(Errc::io, "CSV write failed");
  return text.size();
}

std::size_t write_csv(const Series& series, const std::filesystem::path& path) {
  std::ostringstream buf;
  const std::size_t n = emit_csv(series, buf);
  const std::string text = buf.str();
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  return n;
}

Series parse_csv(std::string_view text, std::string label) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::optional<std::array<std::size_t, 6>> index;
  std::size_t field_count = 0;
  std::vector<ResultRow> rows;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (!index) {
      std::array<std::size_t, 6> idx{};
      for (std::size_t c = 0; c < kColumns.size(); ++c) {
        auto it = std::find_if(fields.begin(), fields.end(),
                               [&](std::string_view f) { return lower(f) == kColumns[c]; });
        if (it == fields.end()) {
          throw Error(Errc::schema, label + ": CSV header lacks column '" + std::string(kColumns[c]) + "'");
        }
        idx[c] = static_cast<std::size_t>(it - fields.begin());
      }
      index = idx;
      field_count = fields.size();
      continue;
    }
    if (fields.size() != field_count) {
      throw Error(Errc::schema, label + ": CSV line " + std::to_string(line_no) + " has " +
                                    std::to_string(fields.size()) + " fields, expected " +
                                    std::to_string(field_count));
    }
    const auto& ix = *index;
    ResultRow r;
    r.pixels = parse_number<std::uint64_t>(fields[ix[0]], kColumns[0], line_no);
    r.avg = parse_number<double>(fields[ix[1]], kColumns[1], line_no);
    r.min = parse_number<double>(fields[ix[2]], kColumns[2], line_no);
    r.max = parse_number<double>(fields[ix[3]], kColumns[3], line_no);
    r.width = parse_number<std::uint64_t>(fields[ix[4]], kColumns[4], line_no);
    r.height = parse_number<std::uint64_t>(fields[ix[5]], kColumns[5], line_no);
    rows.push_back(r);
  }
  if (!index) throw Error(Errc::schema, label + ": CSV has no header");
  return Series(std::move(label), std::move(rows));
}

Series read_csv(const std::filesystem::path& path) {
  const auto bytes = read_file(path);
  return parse_csv(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                   path.stem().string());
}

std::filesystem::path fixture_directory() {
  if (const char* env = std::getenv("GRAYBENCH_FIXTURES"); env && *env) return env;
  return GRAYBENCH_FIXTURE_DIR;
}

Series load_fixture(std::string_view name) {
  return read_csv(fixture_directory() / (std::string(name) + ".csv"));
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_directory(), ec)) {
    if (entry.path().extension() == ".csv") names.push_back(entry.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

GnuplotBundle emit_gnuplot(std::span<const Series> series, const GnuplotOptions& options) {
  if (series.empty()) throw Error(Errc::argument, "gnuplot emission needs at least one series");
  GnuplotBundle bundle;
  std::vector<std::string> names;
  for (const Series& s : series) {
    std::string name = data_file_name(s.label());
    // Keep names unique when two labels sanitize to the same file.
    for (int n = 2; std::find(names.begin(), names.end(), name) != names.end(); ++n) {
      name = data_file_name(s.label() + "_" + std::to_string(n));
    }
    names.push_back(name);
    std::string text = "# " + s.label() + ": pixels " +
                       (options.normalized ? "seconds_per_pixel" : "seconds") + " (" +
                       std::string(to_string(options.stat)) + ")\n";
    for (const ResultRow& r : s.rows()) {
      double value = r.get(options.stat);
      if (options.normalized) value /= static_cast<double>(r.pixels);
      text += std::to_string(r.pixels) + " " + format_general(value) + "\n";
    }
    bundle.data_files.push_back({name, std::move(text)});
  }

  std::ostringstream gp;
  gp << "set terminal pngcairo size 1200,800 noenhanced\n";
  gp << "set output " << gnuplot_quote(options.image_name) << "\n";
  std::string title = options.title;
  if (!options.platform.empty()) title += "\n" + options.platform;
  gp << "set title " << gnuplot_quote(title) << "\n";
  gp << "set xlabel \"Input size (pixels)\"\n";
  gp << "set ylabel " << gnuplot_quote(options.normalized ? "Time per pixel (s/pixel)" : "Execution time (s)")
     << "\n";
  if (options.logx) gp << "set logscale x\n";
  if (options.logy) gp << "set logscale y\n";
  gp << "set key left top\n";
  gp << "set grid\n";
  gp << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) gp << ", \\\n     ";
    gp << gnuplot_quote(names[i]) << " using 1:2 with linespoints title " << gnuplot_quote(series[i].label());
  }
  gp << "\n";
  bundle.script = gp.str();
  return bundle;
}

void write_gnuplot(const GnuplotBundle& bundle, const std::filesystem::path& directory,
                   std::string_view script_name) {
  const auto put = [&](const std::string& name, const std::string& text) {
    write_file(directory / name, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
  };
  put(std::string(script_name), bundle.script);
  for (const auto& f : bundle.data_files) put(f.name, f.text);
}

std::string format_table(const Series& series) {
  std::ostringstream out;
  out << series.label() << '\n';
  char line[160];
  std::snprintf(line, sizeof line, "%10s %14s %14s %14s %6s %6s\n", "pixels", "avg", "min", "max", "width",
                "height");
  out << line;
  for (const ResultRow& r : series.rows()) {
    std::snprintf(line, sizeof line, "%10llu %14.9f %14.9f %14.9f %6llu %6llu%s\n",
                  static_cast<unsigned long long>(r.pixels), r.avg, r.min, r.max,
                  static_cast<unsigned long long>(r.width), static_cast<unsigned long long>(r.height),
                  r.derived ? "  (derived)" : "");
    out << line;
  }
  return out.str();
}

}  // namespace graybench
