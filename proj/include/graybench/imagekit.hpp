#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace graybench {

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

static_assert(sizeof(Rgb8) == 3, "Rgb8 must be tightly packed");

/// Row-major RGB raster. Dimensions are always >= 1 and the pixel buffer
/// always holds exactly width * height entries.
class Image {
 public:
  Image(std::size_t width, std::size_t height);
  Image(std::size_t width, std::size_t height, std::vector<Rgb8> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  std::span<const Rgb8> pixels() const noexcept { return pixels_; }
  std::span<Rgb8> pixels() noexcept { return pixels_; }

  const Rgb8& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  Rgb8& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }

  /// Interleaved channel bytes, 3 * pixel_count() long.
  std::span<const std::uint8_t> bytes() const noexcept;

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<Rgb8> pixels_;
};

/// Row-major 8-bit grayscale raster.
class GrayImage {
 public:
  GrayImage(std::size_t width, std::size_t height);
  GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return pixels_.size(); }

  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::span<std::uint8_t> pixels() noexcept { return pixels_; }

  std::uint8_t at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  std::uint8_t& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> pixels_;
};

/// Deterministic noise image. Each channel byte, in row-major pixel order,
/// is the top byte of a 64-bit LCG state (multiplier 6364136223846793005,
/// increment 1442695040888963407) advanced once per byte. Seed 0 is mapped
/// to 0x9E3779B97F4A7C15.
Image generate_image(std::size_t width, std::size_t height, std::uint64_t seed);

// Binary netpbm codecs. Encoders emit exactly "P6\n<w> <h>\n255\n" (resp. P5);
// decoders accept any whitespace and '#' comments between header tokens.
std::vector<std::uint8_t> encode_ppm(const Image& image);
Image decode_ppm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> encode_pgm(const GrayImage& image);
GrayImage decode_pgm(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

Image read_ppm(const std::filesystem::path& path);
GrayImage read_pgm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const Image& image);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

}  // namespace graybench
