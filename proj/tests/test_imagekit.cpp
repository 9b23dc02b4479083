#include "graybench/imagekit.hpp"

#include "graybench/error.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <string>

using namespace graybench;
using graybench::testing::error_code_of;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("generate_image has the requested dimensions") {
  const Image img = generate_image(5, 2, 1);
  CHECK(img.width() == 5);
  CHECK(img.height() == 2);
  CHECK(img.pixel_count() == 10);
  CHECK(img.bytes().size() == 30);
}

TEST_CASE("generate_image is a pure function of its arguments") {
  const Image a = generate_image(64, 31, 7);
  const Image b = generate_image(64, 31, 7);
  CHECK(a == b);
  CHECK_FALSE(a == generate_image(64, 31, 8));
}

TEST_CASE("generate_image seed 0 uses the golden-ratio state") {
  // Frozen from a standalone evaluation of the LCG recurrence starting at
  // 0x9E3779B97F4A7C15: three steps, top byte of each state.
  const Image img = generate_image(1, 1, 0);
  CHECK(img.at(0, 0) == Rgb8{44, 170, 179});
}

TEST_CASE("generate_image rejects zero dimensions") {
  CHECK(error_code_of([] { generate_image(0, 4, 1); }) == Errc::invalid_dimension);
  CHECK(error_code_of([] { generate_image(4, 0, 1); }) == Errc::invalid_dimension);
}

TEST_CASE("encode_ppm emits the fixed header") {
  SUBCASE("1x1 white") {
    Image img(1, 1, {Rgb8{255, 255, 255}});
    CHECK(encode_ppm(img) == bytes_of(std::string("P6\n1 1\n255\n\xFF\xFF\xFF")));
  }
  SUBCASE("2x1 black, white") {
    Image img(2, 1, {Rgb8{0, 0, 0}, Rgb8{255, 255, 255}});
    auto expected = bytes_of("P6\n2 1\n255\n");
    expected.insert(expected.end(), {0, 0, 0, 255, 255, 255});
    CHECK(encode_ppm(img) == expected);
  }
}

TEST_CASE("encode_pgm emits the fixed header") {
  GrayImage img(1, 1, {0});
  auto expected = bytes_of("P5\n1 1\n255\n");
  expected.push_back(0);
  CHECK(encode_pgm(img) == expected);
}

TEST_CASE("decode_ppm accepts comments and loose whitespace") {
  auto bytes = bytes_of("P6\n# comment\n1 1\n255\n");
  bytes.insert(bytes.end(), {255, 255, 255});
  CHECK(decode_ppm(bytes) == Image(1, 1, {Rgb8{255, 255, 255}}));

  auto loose = bytes_of("P6 \t2\r\n# w h\n  1 # trailing\n255 ");
  loose.insert(loose.end(), {1, 2, 3, 4, 5, 6});
  CHECK(decode_ppm(loose) == Image(2, 1, {Rgb8{1, 2, 3}, Rgb8{4, 5, 6}}));
}

TEST_CASE("decode_ppm error cases") {
  CHECK(error_code_of([] { decode_ppm(bytes_of("P5\n1 1\n255\n\x01")); }) == Errc::format);
  CHECK(error_code_of([] { decode_ppm(bytes_of("")); }) == Errc::format);
  CHECK(error_code_of([] { decode_ppm(bytes_of("P6\nx 1\n255\n")); }) == Errc::format);
  CHECK(error_code_of([] { decode_ppm(bytes_of("P6\n1 1\n65535\n\0\0\0\0\0\0")); }) == Errc::unsupported);
  CHECK(error_code_of([] { decode_ppm(bytes_of("P6\n1 1\n15\n\1\1\1")); }) == Errc::unsupported);
  CHECK(error_code_of([] { decode_ppm(bytes_of("P6\n2 2\n255\n\1\2\3")); }) == Errc::truncation);
  CHECK(error_code_of([] { decode_ppm(bytes_of("P6\n2 2")); }) == Errc::truncation);
  CHECK(error_code_of([] { decode_ppm(bytes_of("P6\n0 2\n255\n")); }) == Errc::format);
}

TEST_CASE("decode_pgm error cases") {
  CHECK(error_code_of([] { decode_pgm(bytes_of("P6\n1 1\n255\n\1\1\1")); }) == Errc::format);
  CHECK(error_code_of([] { decode_pgm(bytes_of("P5\n1 1\n1023\n\1\1")); }) == Errc::unsupported);
  CHECK(error_code_of([] { decode_pgm(bytes_of("P5\n3 1\n255\n\1\1")); }) == Errc::truncation);
}

TEST_CASE("PPM round trip and exact length over random images") {
  auto& rng = graybench::testing::rng();
  for (int i = 0; i < 200; ++i) {
    const std::size_t w = 1 + rng() % 97;
    const std::size_t h = 1 + rng() % 61;
    const Image img = generate_image(w, h, rng());
    const auto encoded = encode_ppm(img);
    const std::string header = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    REQUIRE(encoded.size() == header.size() + 3 * w * h);
    REQUIRE(decode_ppm(encoded) == img);
  }
}

TEST_CASE("PGM round trip over random images") {
  auto& rng = graybench::testing::rng();
  for (int i = 0; i < 200; ++i) {
    const std::size_t w = 1 + rng() % 97;
    const std::size_t h = 1 + rng() % 61;
    std::vector<std::uint8_t> px(w * h);
    for (auto& p : px) p = static_cast<std::uint8_t>(rng());
    const GrayImage img(w, h, px);
    REQUIRE(decode_pgm(encode_pgm(img)) == img);
  }
}

TEST_CASE("image constructors enforce the length invariant") {
  CHECK(error_code_of([] { Image(2, 2, std::vector<Rgb8>(3)); }) == Errc::invalid_dimension);
  CHECK(error_code_of([] { GrayImage(2, 2, std::vector<std::uint8_t>(5)); }) == Errc::invalid_dimension);
  CHECK(error_code_of([] { GrayImage(0, 1); }) == Errc::invalid_dimension);
}

TEST_CASE("file helpers") {
  graybench::testing::TempDir dir;
  const Image img = generate_image(7, 3, 99);
  write_ppm(dir / "a.ppm", img);
  CHECK(read_ppm(dir / "a.ppm") == img);
  CHECK(error_code_of([&] { read_ppm(dir / "missing.ppm"); }) == Errc::io);
  CHECK(error_code_of([&] { write_pgm(dir / "no" / "such" / "x.pgm", GrayImage(1, 1)); }) == Errc::io);
}
