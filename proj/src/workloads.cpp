#include "graybench/workloads.hpp"

#include "graybench/error.hpp"
#include "graybench/imagekit.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace graybench {

namespace {

std::vector<WorkloadSpec> build_reference_table() {
  static constexpr std::size_t kSizes[][2] = {
      {5, 2},      {4, 4},      {5, 4},       {8, 4},       {8, 6},       {8, 8},       {16, 6},
      {16, 8},     {16, 12},    {16, 16},     {32, 15},     {32, 16},     {32, 31},     {32, 32},
      {64, 31},    {64, 32},    {64, 64},     {128, 39},    {128, 64},    {128, 78},    {128, 128},
      {256, 78},   {256, 128},  {256, 195},   {256, 256},   {512, 195},   {512, 256},   {512, 390},
      {512, 512},  {1024, 488}, {1024, 512},  {1024, 976},  {1024, 1024}, {2048, 976},  {2048, 1024},
      {2048, 2048}, {2048, 2441}, {4096, 2048}, {4096, 2441}, {4096, 4096},
  };
  std::vector<WorkloadSpec> table;
  table.reserve(std::size(kSizes));
  for (const auto& wh : kSizes) {
    WorkloadSpec spec{wh[0], wh[1], 0};
    spec.seed = spec.pixels();
    table.push_back(spec);
  }
  return table;
}

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != '\t' && text[j] != ',') ++j;
    if (j > i) words.push_back(text.substr(i, j - i));
    i = j;
  }
  return words;
}

std::uint64_t parse_count(std::string_view word) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || ptr != word.data() + word.size()) {
    throw Error(Errc::configuration, "size selector: expected a number, got '" + std::string(word) + "'");
  }
  return value;
}

}  // namespace

std::string WorkloadSpec::size_label() const {
  return std::to_string(width) + "x" + std::to_string(height);
}

const std::vector<WorkloadSpec>& reference_sizes() {
  static const std::vector<WorkloadSpec> table = build_reference_table();
  return table;
}

std::filesystem::path materialize(const WorkloadSpec& spec, const std::filesystem::path& directory) {
  if (!std::filesystem::is_directory(directory)) {
    throw Error(Errc::io, directory.string() + ": not a directory");
  }
  const auto path = directory / (spec.size_label() + ".ppm");
  write_ppm(path, generate_image(spec.width, spec.height, spec.seed));
  return path;
}

std::string reference_sizes_csv() {
  std::ostringstream out;
  out << "width,height,pixels,seed\n";
  for (const auto& s : reference_sizes()) {
    out << s.width << ',' << s.height << ',' << s.pixels() << ',' << s.seed << '\n';
  }
  return out.str();
}

SizeSelector SizeSelector::parse(std::string_view text) {
  const auto words = split_words(text);
  if (words.empty()) throw Error(Errc::configuration, "empty size selector");
  SizeSelector sel;
  const auto expect_args = [&](std::size_t n) {
    if (words.size() != n + 1) {
      throw Error(Errc::configuration, "size selector '" + std::string(words[0]) + "' takes " +
                                           std::to_string(n) + " argument(s)");
    }
  };
  if (words[0] == "all") {
    expect_args(0);
    sel.kind = Kind::all;
  } else if (words[0] == "first") {
    expect_args(1);
    sel.kind = Kind::first;
    sel.count = static_cast<std::size_t>(parse_count(words[1]));
    if (sel.count == 0) throw Error(Errc::configuration, "size selector 'first' needs N >= 1");
  } else if (words[0] == "max") {
    expect_args(1);
    sel.kind = Kind::max_pixels;
    sel.count = static_cast<std::size_t>(parse_count(words[1]));
  } else if (words[0] == "pixels") {
    if (words.size() < 2) throw Error(Errc::configuration, "size selector 'pixels' needs at least one count");
    sel.kind = Kind::pixels;
    for (std::size_t i = 1; i < words.size(); ++i) sel.pixel_counts.push_back(parse_count(words[i]));
  } else {
    throw Error(Errc::configuration, "unknown size selector '" + std::string(words[0]) + "'");
  }
  if (sel.select().empty()) throw Error(Errc::configuration, "size selector matches no reference size");
  return sel;
}

std::string SizeSelector::to_string() const {
  switch (kind) {
    case Kind::all: return "all";
    case Kind::first: return "first " + std::to_string(count);
    case Kind::max_pixels: return "max " + std::to_string(count);
    case Kind::pixels: {
      std::string s = "pixels";
      for (auto p : pixel_counts) s += " " + std::to_string(p);
      return s;
    }
  }
  return "all";
}

std::vector<WorkloadSpec> SizeSelector::select() const {
  const auto& table = reference_sizes();
  std::vector<WorkloadSpec> out;
  switch (kind) {
    case Kind::all: out = table; break;
    case Kind::first:
      out.assign(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(std::min(count, table.size())));
      break;
    case Kind::max_pixels:
      std::copy_if(table.begin(), table.end(), std::back_inserter(out),
                   [&](const WorkloadSpec& s) { return s.pixels() <= count; });
      break;
    case Kind::pixels:
      for (auto p : pixel_counts) {
        auto it = std::find_if(table.begin(), table.end(), [&](const WorkloadSpec& s) { return s.pixels() == p; });
        if (it == table.end()) {
          throw Error(Errc::configuration, "pixel count " + std::to_string(p) + " is not a reference size");
        }
        out.push_back(*it);
      }
      std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.pixels() < b.pixels(); });
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
  }
  return out;
}

}  // namespace graybench
