#include "graybench/kernels.hpp"

#include "graybench/error.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace graybench;
using graybench::testing::error_code_of;

TEST_CASE("coefficient invariants") {
  CHECK(GrayscaleCoefficients::fixed_r + GrayscaleCoefficients::fixed_g + GrayscaleCoefficients::fixed_b == 256);
  CHECK(GrayscaleCoefficients::fixed_shift == 8);
}

TEST_CASE("gray_pixel_double") {
  CHECK(gray_pixel_double(255, 255, 255) == 255);
  CHECK(gray_pixel_double(0, 0, 0) == 0);
  // 0.3 * 255 = 76.5, truncated.
  CHECK(gray_pixel_double(255, 0, 0) == 76);
}

TEST_CASE("gray_pixel_int") {
  CHECK(gray_pixel_int(255, 255, 255) == 255);
  // 77 * 255 = 19635, >> 8 = 76
  CHECK(gray_pixel_int(255, 0, 0) == 76);
  // 151 * 255 = 38505, >> 8 = 150
  CHECK(gray_pixel_int(0, 255, 0) == 150);
}

TEST_CASE("variant names") {
  for (Variant v : kAllVariants) {
    CHECK(parse_variant(to_string(v)) == v);
    CHECK(parse_variant(corpus_name(v)) == v);
  }
  CHECK(corpus_name(Variant::double2d_cm) == "double2dt");
  CHECK(error_code_of([] { parse_variant("double3d"); }) == Errc::argument);
}

TEST_CASE("integer and single-precision conversions stay within 1 of double, all RGB values") {
  int worst_int = 0;
  int worst_float = 0;
  for (int r = 0; r < 256; ++r) {
    for (int g = 0; g < 256; ++g) {
      for (int b = 0; b < 256; ++b) {
        const auto R = static_cast<std::uint8_t>(r), G = static_cast<std::uint8_t>(g),
                   B = static_cast<std::uint8_t>(b);
        const int d = gray_pixel_double(R, G, B);
        worst_int = std::max(worst_int, std::abs(gray_pixel_int(R, G, B) - d));
        worst_float = std::max(worst_float, std::abs(gray_pixel_float(R, G, B) - d));
      }
    }
  }
  CHECK(worst_int <= 1);
  CHECK(worst_float <= 1);
}

TEST_CASE("run_variant on small images") {
  const Image white(2, 2, std::vector<Rgb8>(4, Rgb8{255, 255, 255}));
  CHECK(run_variant(Variant::double2d_rm, white) == GrayImage(2, 2, {255, 255, 255, 255}));
  for (Variant v : kAllVariants) {
    const GrayImage out = run_variant(v, white);
    CHECK(out.width() == 2);
    CHECK(out.height() == 2);
  }
  CHECK(run_variant(Variant::empty, generate_image(5, 2, 3)) == GrayImage(5, 2));
}

TEST_CASE("traversal orders agree on a non-square image") {
  const Image img = generate_image(64, 31, 7);
  const GrayImage rm = run_variant(Variant::double2d_rm, img);
  CHECK(run_variant(Variant::double2d_cm, img) == rm);
  CHECK(run_variant(Variant::double1d, img) == rm);
  // Spot-check the per-pixel mapping against the scalar function.
  const Rgb8 p = img.at(17, 29);
  CHECK(rm.at(17, 29) == gray_pixel_double(p.r, p.g, p.b));
}
