#include "graybench/imagekit.hpp"

#include "graybench/error.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <limits>
#include <memory>
#include <string>
#include <string_view>

namespace graybench {

namespace {

void check_dimensions(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw Error(Errc::invalid_dimension, "image dimensions must be positive, got " +
                                             std::to_string(width) + "x" + std::to_string(height));
  }
  if (width > std::numeric_limits<std::size_t>::max() / 3 / height) {
    throw Error(Errc::invalid_dimension, "image dimensions overflow");
  }
}

void check_length(std::size_t width, std::size_t height, std::size_t length) {
  if (length != width * height) {
    throw Error(Errc::invalid_dimension, "pixel buffer holds " + std::to_string(length) +
                                             " samples, expected " + std::to_string(width * height));
  }
}

constexpr std::uint64_t kSeedZeroState = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kLcgMultiplier = 6364136223846793005ULL;
constexpr std::uint64_t kLcgIncrement = 1442695040888963407ULL;

struct Header {
  std::size_t width;
  std::size_t height;
  std::size_t payload_offset;
};

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_separators() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t number(const char* what) {
    skip_separators();
    std::size_t value = 0;
    const char* first = reinterpret_cast<const char*>(bytes_.data()) + pos_;
    const char* last = reinterpret_cast<const char*>(bytes_.data()) + bytes_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) {
      throw Error(Errc::format, std::string("netpbm ") + what + " out of range");
    }
    if (ec != std::errc() || ptr == first) {
      if (ptr == last) throw Error(Errc::truncation, std::string("netpbm header ends before ") + what);
      throw Error(Errc::format, std::string("netpbm header: expected ") + what);
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void end_of_header() {
    if (pos_ >= bytes_.size()) throw Error(Errc::truncation, "netpbm header ends after maxval");
    if (!is_space(bytes_[pos_])) throw Error(Errc::format, "netpbm maxval not followed by whitespace");
    ++pos_;
  }

  std::size_t position() const { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

Header parse_header(std::span<const std::uint8_t> bytes, char magic_digit, std::size_t channels) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != static_cast<std::uint8_t>(magic_digit)) {
    throw Error(Errc::format, std::string("expected netpbm magic P") + magic_digit);
  }
  HeaderReader reader(bytes);
  const std::size_t width = reader.number("width");
  const std::size_t height = reader.number("height");
  const std::size_t maxval = reader.number("maxval");
  if (width == 0 || height == 0) {
    throw Error(Errc::format, "netpbm dimensions must be positive");
  }
  if (maxval != 255) {
    throw Error(Errc::unsupported, "only maxval 255 is supported, got " + std::to_string(maxval));
  }
  check_dimensions(width, height);
  reader.end_of_header();
  const std::size_t need = width * height * channels;
  const std::size_t have = bytes.size() - reader.position();
  if (have < need) {
    throw Error(Errc::truncation, "netpbm payload holds " + std::to_string(have) + " bytes, expected " +
                                      std::to_string(need));
  }
  return {width, height, reader.position()};
}

std::vector<std::uint8_t> encode(char magic_digit, std::size_t width, std::size_t height,
                                 std::span<const std::uint8_t> payload) {
  const std::string header = std::string("P") + magic_digit + "\n" + std::to_string(width) + " " +
                             std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> out;
  out.reserve(header.size() + payload.size());
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

std::string errno_text(const std::filesystem::path& path) {
  return path.string() + ": " + std::strerror(errno);
}

}  // namespace

Image::Image(std::size_t width, std::size_t height) : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.resize(width * height);
}

Image::Image(std::size_t width, std::size_t height, std::vector<Rgb8> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  check_length(width, height, pixels_.size());
}

std::span<const std::uint8_t> Image::bytes() const noexcept {
  return {reinterpret_cast<const std::uint8_t*>(pixels_.data()), pixels_.size() * 3};
}

GrayImage::GrayImage(std::size_t width, std::size_t height) : width_(width), height_(height) {
  check_dimensions(width, height);
  pixels_.resize(width * height);
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dimensions(width, height);
  check_length(width, height, pixels_.size());
}

Image generate_image(std::size_t width, std::size_t height, std::uint64_t seed) {
  Image image(width, height);
  std::uint64_t state = seed == 0 ? kSeedZeroState : seed;
  auto next = [&state]() {
    state = state * kLcgMultiplier + kLcgIncrement;
    return static_cast<std::uint8_t>(state >> 56);
  };
  for (Rgb8& px : image.pixels()) {
    px.r = next();
    px.g = next();
    px.b = next();
  }
  return image;
}

std::vector<std::uint8_t> encode_ppm(const Image& image) {
  return encode('6', image.width(), image.height(), image.bytes());
}

Image decode_ppm(std::span<const std::uint8_t> bytes) {
  const Header h = parse_header(bytes, '6', 3);
  std::vector<Rgb8> pixels(h.width * h.height);
  std::memcpy(pixels.data(), bytes.data() + h.payload_offset, pixels.size() * 3);
  return Image(h.width, h.height, std::move(pixels));
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
  return encode('5', image.width(), image.height(), image.pixels());
}

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  const Header h = parse_header(bytes, '5', 1);
  const auto* first = bytes.data() + h.payload_offset;
  return GrayImage(h.width, h.height, std::vector<std::uint8_t>(first, first + h.width * h.height));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  File f(std::fopen(path.c_str(), "rb"));
  if (!f) throw Error(Errc::io, errno_text(path));
  std::error_code ec;
  const auto size = std::filesystem::file_size(path, ec);
  std::vector<std::uint8_t> data(ec ? 0 : static_cast<std::size_t>(size));
  std::size_t filled = std::fread(data.data(), 1, data.size(), f.get());
  data.resize(filled);
  // Files that grow (or report no size) are drained in chunks.
  std::uint8_t chunk[1 << 14];
  std::size_t n = 0;
  while ((n = std::fread(chunk, 1, sizeof chunk, f.get())) > 0) {
    data.insert(data.end(), chunk, chunk + n);
  }
  if (std::ferror(f.get())) throw Error(Errc::io, errno_text(path));
  return data;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  File f(std::fopen(path.c_str(), "wb"));
  if (!f) throw Error(Errc::io, errno_text(path));
  if (std::fwrite(bytes.data(), 1, bytes.size(), f.get()) != bytes.size()) {
    throw Error(Errc::io, errno_text(path));
  }
  if (std::fclose(f.release()) != 0) throw Error(Errc::io, errno_text(path));
}

Image read_ppm(const std::filesystem::path& path) { return decode_ppm(read_file(path)); }

GrayImage read_pgm(const std::filesystem::path& path) { return decode_pgm(read_file(path)); }

void write_ppm(const std::filesystem::path& path, const Image& image) {
  write_file(path, encode_ppm(image));
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  write_file(path, encode_pgm(image));
}

}  // namespace graybench
