#include "graybench/runner.hpp"

#include "graybench/error.hpp"
#include "graybench/imagekit.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <memory>

using namespace graybench;
using namespace std::chrono_literals;
using graybench::testing::error_code_of;
using graybench::testing::TempDir;
using graybench::testing::write_script;

namespace {

// Replays fixed clock readings in order.
MonotonicClock scripted_clock(std::vector<std::chrono::nanoseconds> readings) {
  auto state = std::make_shared<std::pair<std::vector<std::chrono::nanoseconds>, std::size_t>>(
      std::move(readings), 0);
  return [state] {
    auto& [values, next] = *state;
    if (next >= values.size()) throw std::runtime_error("scripted clock exhausted");
    return values[next++];
  };
}

const WorkloadSpec kSmall = reference_sizes().front();  // 5x2

}  // namespace

TEST_CASE("time_once on the builtin empty variant") {
  TempDir dir;
  const Runner runner(RunnerOptions{dir.path(), {}, 0.0});
  const auto input = materialize(kSmall, dir.path());
  const Sample s = runner.time_once(TargetSpec::builtin(Variant::empty), input, dir / "out.pgm");
  CHECK(s.seconds > 0.0);
  const GrayImage out = read_pgm(dir / "out.pgm");
  CHECK(out == GrayImage(5, 2));
}

TEST_CASE("builtin timing leaves semantics untouched") {
  TempDir dir;
  const Runner runner(RunnerOptions{dir.path(), {}, 0.0});
  const WorkloadSpec spec{64, 31, 7};
  const auto input = materialize(spec, dir.path());
  // Pre-existing output is overwritten.
  write_pgm(dir / "out.pgm", GrayImage(1, 1));
  runner.time_once(TargetSpec::builtin(Variant::float1d), input, dir / "out.pgm");
  CHECK(read_pgm(dir / "out.pgm") == run_variant(Variant::float1d, read_ppm(input)));
}

TEST_CASE("time_once error paths") {
  TempDir dir;
  const Runner runner(RunnerOptions{dir.path(), {}, 0.0});
  CHECK(error_code_of([&] {
          runner.time_once(TargetSpec::builtin(Variant::int1d), dir / "missing.ppm", dir / "o.pgm");
        }) == Errc::io);

  const auto input = materialize(kSmall, dir.path());
  const auto failing = write_script(dir / "fail.sh", "echo boom >&2\nexit 1");
  try {
    runner.time_once(TargetSpec::external(failing), input, dir / "o.pgm");
    FAIL("expected target failure");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::target_failure);
    CHECK(std::string(e.what()).find("boom") != std::string::npos);
  }
  CHECK(error_code_of([&] {
          runner.time_once(TargetSpec::external(dir / "does-not-exist"), input, dir / "o.pgm");
        }) == Errc::target_failure);
}

TEST_CASE("external targets receive input and output paths") {
  TempDir dir;
  const Runner runner(RunnerOptions{dir.path(), {}, 0.0});
  const auto input = materialize(kSmall, dir.path());
  const auto copy = write_script(dir / "copy.sh", "printf 'P5\\n1 1\\n255\\n\\000' > \"$2\"\ntest -f \"$1\"");
  runner.time_once(TargetSpec::external(copy), input, dir / "o.pgm");
  CHECK(read_pgm(dir / "o.pgm") == GrayImage(1, 1));
}

TEST_CASE("a sleeping external target is timed at least as long as it sleeps") {
  TempDir dir;
  const Runner runner(RunnerOptions{dir.path(), {}, 0.0});
  const auto input = materialize(kSmall, dir.path());
  const auto sleeper = write_script(dir / "sleep.sh", "sleep 0.01");
  const Sample s = runner.time_once(TargetSpec::external(sleeper), input, dir / "o.pgm");
  CHECK(s.seconds >= 0.010);
}

TEST_CASE("run_series statistics from a scripted clock") {
  TempDir dir;
  // Spans of 3, 1, 2, 5 and 4 ms.
  const Runner runner(RunnerOptions{
      dir.path(), scripted_clock({0ms, 3ms, 3ms, 4ms, 4ms, 6ms, 6ms, 11ms, 11ms, 15ms}), 1e-9});
  const MeasurementRecord rec = runner.run_series(TargetSpec::builtin(Variant::empty), kSmall, 5);
  REQUIRE(rec.samples.size() == 5);
  CHECK(rec.reps == 5);
  CHECK(rec.min == doctest::Approx(0.001).epsilon(1e-12));
  CHECK(rec.max == doctest::Approx(0.005).epsilon(1e-12));
  CHECK(rec.avg == doctest::Approx(0.003).epsilon(1e-12));
  CHECK(rec.samples[0].seconds == doctest::Approx(0.003));
  CHECK(rec.width == 5);
  CHECK(rec.height == 2);
  CHECK(rec.pixels == 10);
  CHECK(rec.target == "builtin-empty");
  CHECK_FALSE(rec.low_confidence);
}

TEST_CASE("a clock running backwards never yields a negative sample") {
  TempDir dir;
  const Runner runner(RunnerOptions{dir.path(), scripted_clock({10ms, 4ms}), 1e-9});
  const MeasurementRecord rec = runner.run_series(TargetSpec::builtin(Variant::empty), kSmall, 1);
  CHECK(rec.min == 0.0);
}

TEST_CASE("run_series with real timing") {
  TempDir dir;
  const Runner runner(RunnerOptions{dir.path(), {}, 0.0});
  SUBCASE("reps 5") {
    const auto rec = runner.run_series(TargetSpec::builtin(Variant::double1d), kSmall, 5);
    CHECK(rec.samples.size() == 5);
    CHECK(rec.min <= rec.avg);
    CHECK(rec.avg <= rec.max);
  }
  SUBCASE("reps 1") {
    const auto rec = runner.run_series(TargetSpec::builtin(Variant::double1d), kSmall, 1);
    CHECK(rec.min == rec.avg);
    CHECK(rec.max == rec.avg);
    CHECK(rec.min == rec.samples[0].seconds);
  }
  SUBCASE("reps 0") {
    CHECK(error_code_of([&] { runner.run_series(TargetSpec::builtin(Variant::double1d), kSmall, 0); }) ==
          Errc::argument);
  }
}

TEST_CASE("summarize flags low-confidence records") {
  const std::vector<Sample> samples{{1e-6}, {2e-6}};
  CHECK(summarize("x", kSmall, samples, 1e-7).low_confidence);
  CHECK_FALSE(summarize("x", kSmall, samples, 1e-9).low_confidence);
  CHECK(error_code_of([] { summarize("x", kSmall, {}, 1e-9); }) == Errc::argument);
}

TEST_CASE("run_suite keeps order and survives failures") {
  TempDir dir;
  const Runner runner(RunnerOptions{dir.path(), {}, 0.0});
  const auto& table = reference_sizes();

  SUBCASE("five smallest sizes") {
    std::vector<std::size_t> seen;
    const auto entries = runner.run_suite(TargetSpec::builtin(Variant::double1d),
                                          std::span(table.data(), 5), 2,
                                          [&](const SuiteProgress& p) { seen.push_back(p.index); });
    REQUIRE(entries.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      REQUIRE(entries[i].record);
      CHECK(entries[i].record->pixels == table[i].pixels());
      CHECK(entries[i].record->reps == 2);
    }
    CHECK(seen == std::vector<std::size_t>{0, 1, 2, 3, 4});
  }
  SUBCASE("given order is preserved") {
    const std::vector<WorkloadSpec> specs{table[1], table[0]};
    const auto entries = runner.run_suite(TargetSpec::builtin(Variant::int1d), specs, 1);
    CHECK(entries[0].record->pixels == 16);
    CHECK(entries[1].record->pixels == 10);
  }
  SUBCASE("failures are recorded per spec") {
    // Fails only for the 4x4 input.
    const auto picky = write_script(dir / "picky.sh", "case \"$1\" in *4x4*) exit 3;; esac\n: > \"$2\"");
    const auto entries = runner.run_suite(TargetSpec::external(picky), std::span(table.data(), 3), 1);
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].record);
    CHECK_FALSE(entries[1].record);
    CHECK(entries[1].error.find("exit status 3") != std::string::npos);
    CHECK(entries[2].record);
  }
  SUBCASE("empty suite") {
    CHECK(error_code_of([&] { runner.run_suite(TargetSpec::builtin(Variant::int1d), {}, 1); }) ==
          Errc::argument);
  }
}

TEST_CASE("target specs") {
  const auto b = TargetSpec::builtin(Variant::int1d);
  CHECK(b.kind() == TargetSpec::Kind::builtin);
  CHECK(b.variant() == Variant::int1d);
  CHECK(b.executable().empty());
  CHECK(b.label() == "builtin-int1d");
  const auto e = TargetSpec::external("/bin/true", "t");
  CHECK(e.kind() == TargetSpec::Kind::external);
  CHECK_FALSE(e.variant());
  CHECK(e.label() == "t");
  CHECK(TargetSpec::external("/usr/bin/foo").label() == "foo");
}

TEST_CASE("timer resolution is positive") { CHECK(timer_resolution_seconds() > 0.0); }
