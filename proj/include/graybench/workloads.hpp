#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace graybench {

struct WorkloadSpec {
  std::size_t width = 0;
  std::size_t height = 0;
  std::uint64_t seed = 0;

  std::uint64_t pixels() const noexcept { return static_cast<std::uint64_t>(width) * height; }
  /// "<w>x<h>", the label used for file names.
  std::string size_label() const;

  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

/// The 40 reference input sizes, ascending by pixel count (5x2 .. 4096x4096).
/// Each entry's seed is its pixel count.
const std::vector<WorkloadSpec>& reference_sizes();

/// Writes encode_ppm(generate_image(spec)) to "<directory>/<w>x<h>.ppm" and
/// returns that path. Rewrites the same bytes on every call.
std::filesystem::path materialize(const WorkloadSpec& spec, const std::filesystem::path& directory);

/// CSV listing of the reference table: "width,height,pixels,seed".
std::string reference_sizes_csv();

/// Picks a subset of the reference table.
///   "all"                  every size
///   "first N"              the N smallest sizes
///   "max P"                every size with at most P pixels
///   "pixels P1 P2 ..."     exactly the listed pixel counts
struct SizeSelector {
  enum class Kind { all, first, max_pixels, pixels };
  Kind kind = Kind::all;
  std::size_t count = 0;
  std::vector<std::uint64_t> pixel_counts;

  static SizeSelector parse(std::string_view text);
  std::string to_string() const;
  std::vector<WorkloadSpec> select() const;

  friend bool operator==(const SizeSelector&, const SizeSelector&) = default;
};

}  // namespace graybench
