#include "graybench/kernels.hpp"

#include "graybench/error.hpp"

#include <string>

// The loop shapes below are what is being measured. This file is built with
// loop interchange disabled (see src/CMakeLists.txt) so the column-major
// variant is not rewritten into the row-major one.

#if defined(__GNUC__)
#define GRAYBENCH_NOINLINE __attribute__((noinline))
#else
#define GRAYBENCH_NOINLINE
#endif

namespace graybench {

namespace {

GRAYBENCH_NOINLINE void convert_double2d_rm(const Rgb8* in, std::uint8_t* out, std::size_t width,
                                            std::size_t height) {
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const Rgb8& p = in[y * width + x];
      out[y * width + x] = gray_pixel_double(p.r, p.g, p.b);
    }
  }
}

GRAYBENCH_NOINLINE void convert_double2d_cm(const Rgb8* in, std::uint8_t* out, std::size_t width,
                                            std::size_t height) {
  for (std::size_t x = 0; x < width; ++x) {
    for (std::size_t y = 0; y < height; ++y) {
      const Rgb8& p = in[y * width + x];
      out[y * width + x] = gray_pixel_double(p.r, p.g, p.b);
    }
  }
}

GRAYBENCH_NOINLINE void convert_double1d(const Rgb8* in, std::uint8_t* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = gray_pixel_double(in[i].r, in[i].g, in[i].b);
  }
}

GRAYBENCH_NOINLINE void convert_float1d(const Rgb8* in, std::uint8_t* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = gray_pixel_float(in[i].r, in[i].g, in[i].b);
  }
}

GRAYBENCH_NOINLINE void convert_int1d(const Rgb8* in, std::uint8_t* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = gray_pixel_int(in[i].r, in[i].g, in[i].b);
  }
}

}  // namespace

std::string_view to_string(Variant variant) noexcept {
  switch (variant) {
    case Variant::double2d_rm: return "double2d_rm";
    case Variant::double2d_cm: return "double2d_cm";
    case Variant::double1d: return "double1d";
    case Variant::float1d: return "float1d";
    case Variant::int1d: return "int1d";
    case Variant::empty: return "empty";
  }
  return "?";
}

std::string_view corpus_name(Variant variant) noexcept {
  switch (variant) {
    case Variant::double2d_rm: return "double2d";
    case Variant::double2d_cm: return "double2dt";
    default: return to_string(variant);
  }
}

std::optional<Variant> try_parse_variant(std::string_view name) noexcept {
  for (Variant v : kAllVariants) {
    if (name == to_string(v) || name == corpus_name(v)) return v;
  }
  return std::nullopt;
}

Variant parse_variant(std::string_view name) {
  if (auto v = try_parse_variant(name)) return *v;
  throw Error(Errc::argument, "unknown variant '" + std::string(name) +
                                  "' (expected double2d_rm, double2d_cm, double1d, float1d, int1d or empty)");
}

GrayImage run_variant(Variant variant, const Image& image) {
  GrayImage out(image.width(), image.height());
  const Rgb8* in = image.pixels().data();
  std::uint8_t* dst = out.pixels().data();
  switch (variant) {
    case Variant::double2d_rm: convert_double2d_rm(in, dst, image.width(), image.height()); break;
    case Variant::double2d_cm: convert_double2d_cm(in, dst, image.width(), image.height()); break;
    case Variant::double1d: convert_double1d(in, dst, image.pixel_count()); break;
    case Variant::float1d: convert_float1d(in, dst, image.pixel_count()); break;
    case Variant::int1d: convert_int1d(in, dst, image.pixel_count()); break;
    case Variant::empty: break;
  }
  return out;
}

}  // namespace graybench
