#pragma once

#include "graybench/imagekit.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace graybench {

struct GrayscaleCoefficients {
  static constexpr double cr = 0.3;
  static constexpr double cg = 0.59;
  static constexpr double cb = 0.11;
  static constexpr float cr_single = 0.3f;
  static constexpr float cg_single = 0.59f;
  static constexpr float cb_single = 0.11f;
  // Fixed-point weights over 2^fixed_shift; they sum to exactly 256 so white stays white.
  static constexpr std::uint32_t fixed_r = 77;
  static constexpr std::uint32_t fixed_g = 151;
  static constexpr std::uint32_t fixed_b = 28;
  static constexpr unsigned fixed_shift = 8;
};

static_assert(GrayscaleCoefficients::fixed_r + GrayscaleCoefficients::fixed_g +
                  GrayscaleCoefficients::fixed_b ==
              (1u << GrayscaleCoefficients::fixed_shift));

enum class Variant { double2d_rm, double2d_cm, double1d, float1d, int1d, empty };

inline constexpr std::array<Variant, 6> kAllVariants = {
    Variant::double2d_rm, Variant::double2d_cm, Variant::double1d,
    Variant::float1d,     Variant::int1d,       Variant::empty,
};

std::string_view to_string(Variant variant) noexcept;

/// Name of the variant's body in the external C corpus and in job labels
/// ("double2d", "double2dt", ...).
std::string_view corpus_name(Variant variant) noexcept;

/// Accepts both the builtin names and the corpus names. Throws Errc::argument.
Variant parse_variant(std::string_view name);
std::optional<Variant> try_parse_variant(std::string_view name) noexcept;

// Clamp to [0, 255], then truncate toward zero like a C cast to unsigned char.
inline std::uint8_t gray_pixel_double(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  double v = GrayscaleCoefficients::cr * r + GrayscaleCoefficients::cg * g +
             GrayscaleCoefficients::cb * b;
  if (v < 0.0) v = 0.0;
  if (v > 255.0) v = 255.0;
  return static_cast<std::uint8_t>(v);
}

inline std::uint8_t gray_pixel_float(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  float v = GrayscaleCoefficients::cr_single * r + GrayscaleCoefficients::cg_single * g +
            GrayscaleCoefficients::cb_single * b;
  if (v < 0.0f) v = 0.0f;
  if (v > 255.0f) v = 255.0f;
  return static_cast<std::uint8_t>(v);
}

inline std::uint8_t gray_pixel_int(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
  const std::uint32_t acc = GrayscaleCoefficients::fixed_r * r + GrayscaleCoefficients::fixed_g * g +
                            GrayscaleCoefficients::fixed_b * b;
  return static_cast<std::uint8_t>(acc >> GrayscaleCoefficients::fixed_shift);
}

/// Runs one conversion variant. Each variant keeps its own loop structure;
/// all of them are single-threaded and preserve the image dimensions.
/// `empty` does no per-pixel work and returns an all-zero image.
GrayImage run_variant(Variant variant, const Image& image);

}  // namespace graybench
