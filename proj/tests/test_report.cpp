#include "graybench/report.hpp"

#include "graybench/error.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <sstream>

using namespace graybench;
using graybench::testing::error_code_of;
using graybench::testing::slurp;
using graybench::testing::TempDir;

namespace {

std::string csv_of(const Series& s) {
  std::ostringstream out;
  emit_csv(s, out);
  return out.str();
}

}  // namespace

TEST_CASE("every shipped fixture parses") {
  const auto names = fixture_names();
  CHECK(names.size() == 16);
  for (const auto& name : names) {
    const Series s = load_fixture(name);
    CHECK(s.label() == name);
    CHECK(s.size() == 40);
    CHECK(s.rows().front().pixels == 10);
    for (const auto& r : s.rows()) CHECK(r.pixels == r.width * r.height);
  }
}

TEST_CASE("fixture CSVs round-trip byte for byte") {
  for (const auto& name : fixture_names()) {
    const auto path = fixture_directory() / (name + ".csv");
    CHECK_MESSAGE(csv_of(read_csv(path)) == slurp(path), name);
  }
}

TEST_CASE("emit_csv layout") {
  CHECK(csv_of(Series("empty", {})) == "pixels,avg,min,max,width,height\n");
  const std::string text = csv_of(load_fixture("hs"));
  const auto second_line = text.substr(text.find('\n') + 1);
  CHECK(second_line.rfind("10,", 0) == 0);
  std::ostringstream sink;
  const std::size_t written = emit_csv(load_fixture("hs"), sink);
  CHECK(written == sink.str().size());
}

TEST_CASE("parse_csv(emit_csv(s)) == s for random series") {
  auto& rng = graybench::testing::rng();
  std::uniform_real_distribution<double> t(0.0, 200.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<ResultRow> rows;
    std::uint64_t p = 0;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 30); ++k) {
      p += 1 + rng() % 100000;
      rows.push_back(ResultRow{p, t(rng), t(rng) * 1e-7, t(rng) * 1e5, p, 1, false});
    }
    const Series s("rand", rows);
    REQUIRE(parse_csv(csv_of(s), "rand") == s);
  }
}

TEST_CASE("format_seconds is shortest and never exponential") {
  CHECK(format_seconds(0.0013862) == "0.0013862");
  CHECK(format_seconds(101.113425) == "101.113425");
  CHECK(format_seconds(1e-7) == "0.0000001");
  CHECK(format_seconds(0.0) == "0");
}

TEST_CASE("parse_csv tolerance and errors") {
  const Series s = parse_csv("Pixels, Min, Avg, Max, Width, Height\r\n10, 1e-3, 0.002, 0.003, 5, 2\r\n\r\n", "x");
  REQUIRE(s.size() == 1);
  CHECK(s.rows()[0].min == 0.001);
  CHECK(s.rows()[0].avg == 0.002);
  CHECK(error_code_of([] { parse_csv("pixels,avg,mim,max,width,height\n", "x"); }) == Errc::schema);
  CHECK(error_code_of([] { parse_csv("pixels,avg,min,max,width\n", "x"); }) == Errc::schema);
  CHECK(error_code_of([] { parse_csv("", "x"); }) == Errc::schema);
  CHECK(error_code_of([] { parse_csv("pixels,avg,min,max,width,height\n10,a,1,1,5,2\n", "x"); }) ==
        Errc::schema);
  CHECK(error_code_of([] { parse_csv("pixels,avg,min,max,width,height\n10,1,1,1,5\n", "x"); }) ==
        Errc::schema);
  CHECK(error_code_of([] {
          parse_csv("pixels,avg,min,max,width,height\n10,1,1,1,5,2\n10,1,1,1,5,2\n", "x");
        }) == Errc::ordering);
  CHECK(error_code_of([] {
          parse_csv("pixels,avg,min,max,width,height\n16,1,1,1,4,4\n10,1,1,1,5,2\n", "x");
        }) == Errc::ordering);
}

TEST_CASE("write_csv and read_csv use the file stem as label") {
  TempDir dir;
  const Series s = load_fixture("c-gcc-o3-unix-int1d");
  const auto n = write_csv(s, dir / "gcc.csv");
  CHECK(n == std::filesystem::file_size(dir / "gcc.csv"));
  const Series back = read_csv(dir / "gcc.csv");
  CHECK(back.label() == "gcc");
  CHECK(std::equal(back.rows().begin(), back.rows().end(), s.rows().begin(), s.rows().end()));
  CHECK(error_code_of([&] { write_csv(s, dir / "missing" / "x.csv"); }) == Errc::io);
}

TEST_CASE("GRAYBENCH_FIXTURES overrides the fixture directory") {
  TempDir dir;
  write_csv(Series("mine", {ResultRow{10, 1, 1, 1, 5, 2, false}}), dir / "mine.csv");
  ::setenv("GRAYBENCH_FIXTURES", dir.path().c_str(), 1);
  CHECK(fixture_directory() == dir.path());
  CHECK(load_fixture("mine").size() == 1);
  ::unsetenv("GRAYBENCH_FIXTURES");
  CHECK(fixture_directory() != dir.path());
}

TEST_CASE("gnuplot emission") {
  const Series hs = load_fixture("hs");
  SUBCASE("normalized data") {
    GnuplotOptions opt;
    opt.normalized = true;
    const auto bundle = emit_gnuplot(std::span(&hs, 1), opt);
    REQUIRE(bundle.data_files.size() == 1);
    CHECK(bundle.data_files[0].name == "hs.dat");
    const std::string& text = bundle.data_files[0].text;
    const auto last = text.substr(text.rfind('\n', text.size() - 2) + 1);
    CHECK(last.rfind("16777216 ", 0) == 0);
    CHECK(std::stod(last.substr(9)) == doctest::Approx(6.03e-6).epsilon(1e-3));
  }
  SUBCASE("two series, log scales, platform title") {
    const std::vector<Series> two{hs, load_fixture("c-clang-o3-il-double2d")};
    GnuplotOptions opt;
    opt.logx = true;
    opt.logy = true;
    opt.title = "Languages";
    opt.platform = "Example CPU, Linux 6.1";
    const auto bundle = emit_gnuplot(two, opt);
    CHECK(bundle.data_files.size() == 2);
    std::size_t clauses = 0;
    for (auto pos = bundle.script.find(" using 1:2 "); pos != std::string::npos;
         pos = bundle.script.find(" using 1:2 ", pos + 1)) {
      ++clauses;
    }
    CHECK(clauses == 2);
    CHECK(bundle.script.find("set logscale x\n") != std::string::npos);
    CHECK(bundle.script.find("set logscale y\n") != std::string::npos);
    CHECK(bundle.script.find("Example CPU, Linux 6.1") != std::string::npos);
    CHECK(bundle.script.find("\"c-clang-o3-il-double2d.dat\"") != std::string::npos);
  }
  SUBCASE("linear axes by default") {
    const auto bundle = emit_gnuplot(std::span(&hs, 1), GnuplotOptions{});
    CHECK(bundle.script.find("logscale") == std::string::npos);
  }
  SUBCASE("written to disk") {
    TempDir dir;
    write_gnuplot(emit_gnuplot(std::span(&hs, 1), GnuplotOptions{}), dir.path());
    CHECK(std::filesystem::exists(dir / "plot.gp"));
    CHECK(std::filesystem::exists(dir / "hs.dat"));
  }
  CHECK(error_code_of([] { emit_gnuplot({}, GnuplotOptions{}); }) == Errc::argument);
}

TEST_CASE("format_table lists every row") {
  const std::string table = format_table(load_fixture("hs"));
  CHECK(std::count(table.begin(), table.end(), '\n') == 42);
  CHECK(table.find("16777216") != std::string::npos);
}
