#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <afshar/config.hpp>
#include <afshar/runner.hpp>

#include "test_support.hpp"

using namespace afshar;
using Catch::Approx;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.ini");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("an empty config is the default bench") {
  const ExperimentConfig c = parse("");
  CHECK(c.physics.wavelength == 650e-9);
  CHECK(c.slits.separation == 250e-6);
  CHECK(c.wires.thickness == 127e-6);
  CHECK(c.wires.count_half == 3);
  CHECK(c.grids.source.points == 8193);
  CHECK(c.sweep.t_values.size() == 21);
  CHECK(c.sweep.d_values.size() == 3);
}

TEST_CASE("every section and key lands in the config") {
  const ExperimentConfig c = parse(R"(
# full tour
[physics]
wavelength = 633e-9
l1 = 0.5
l2 = 2.0

[slits]
t = 0.25          ; inline comment
phase = 1.5707963
width = 30e-6
separation = 300e-6

[grid]
source_points = 4097
source_halfwidth = 0.5e-3
interference_points = 8193
interference_halfwidth = 8e-3
detector_points = 2048
detector_halfwidth = 4e-3
detector_boundary = 1e-5
phase_samples = 64

[wires]
d = 100e-6
n = 2
b = 6e-3
align_to_minima = false

[lens]
alpha = -1e7
aperture = 3e-3

[sweep]
t_values = 0, 0.5, 1
d_values = 0:50e-6:100e-6
)");
  CHECK(c.physics.wavelength == 633e-9);
  CHECK(c.physics.l1 == 0.5);
  CHECK(c.physics.l2 == 2.0);
  CHECK(c.slits.transmission == 0.25);
  CHECK(c.slits.phase == Approx(1.5707963));
  CHECK(c.slits.width == 30e-6);
  CHECK(c.slits.separation == 300e-6);
  CHECK(c.grids.source.points == 4097);
  CHECK(c.grids.source.half_width == 0.5e-3);
  CHECK(c.grids.interference.points == 8193);
  CHECK(c.grids.interference.half_width == 8e-3);
  CHECK(c.grids.detector.points == 2048);
  CHECK(c.grids.detector.half_width == 4e-3);
  CHECK(c.grids.detector_boundary == 1e-5);
  CHECK(c.grids.phase_samples == 64);
  CHECK(c.wires.thickness == 100e-6);
  CHECK(c.wires.count_half == 2);
  CHECK(c.wires.lens_width == 6e-3);
  CHECK_FALSE(c.wires.align_to_minima);
  CHECK(c.lens_alpha == -1e7);
  CHECK(c.lens_aperture == 3e-3);
  REQUIRE(c.sweep.t_values.size() == 3);
  CHECK(c.sweep.t_values[1] == 0.5);
  REQUIRE(c.sweep.d_values.size() == 3);
  CHECK(c.sweep.d_values[1] == Approx(50e-6));
}

TEST_CASE("ranges expand inclusively") {
  const ExperimentConfig c = parse("[sweep]\nt_values = 0:0.25:1\n");
  REQUIRE(c.sweep.t_values.size() == 5);
  CHECK(c.sweep.t_values.front() == 0.0);
  CHECK(c.sweep.t_values.back() == 1.0);
  CHECK(c.sweep.t_values[2] == Approx(0.5));

  const ExperimentConfig m = parse("[sweep]\nt_values = 0, 0.5:0.25:1\n");
  REQUIRE(m.sweep.t_values.size() == 4);
  CHECK(m.sweep.t_values[3] == 1.0);
}

TEST_CASE("parse errors carry the file position") {
  auto message_of = [](const std::string& text) {
    try {
      parse(text);
      FAIL("expected parse-error");
    } catch (const SimError& e) {
      CHECK(e.code() == Errc::parse_error);
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message_of("[nope]\n").find("test.ini:1:") != std::string::npos);
  CHECK(message_of("[slits]\nnope = 1\n").find("test.ini:2:") != std::string::npos);
  CHECK(message_of("[slits]\nt 0.5\n").find("key = value") != std::string::npos);
  CHECK(message_of("t = 0.5\n").find("before any section") != std::string::npos);
  CHECK(message_of("[slits]\nt = abc\n").find("expected a number") != std::string::npos);
  CHECK(message_of("[slits]\nt =\n").find("empty value") != std::string::npos);
  CHECK(message_of("[slits\n").find("unterminated") != std::string::npos);
  CHECK(message_of("[wires]\nalign_to_minima = maybe\n").find("true/false") !=
        std::string::npos);
  CHECK(message_of("[sweep]\nt_values = 1:0:2\n").find("step") != std::string::npos);
}

TEST_CASE("validation names the violated invariant") {
  auto message_of = [](const std::string& text) {
    try {
      parse(text);
      FAIL("expected validation-error");
    } catch (const SimError& e) {
      CHECK(e.code() == Errc::validation_error);
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message_of("[slits]\nt = 1.5\n").find("t out of [0,1]") != std::string::npos);
  CHECK(message_of("[slits]\nseparation = 2e-3\n\n[wires]\nd = 381e-6\n")
            .find("wire wider than fringe") != std::string::npos);
  CHECK(message_of("[physics]\nwavelength = -1\n").find("wavelength") !=
        std::string::npos);
  CHECK(message_of("[slits]\nwidth = 400e-6\n").find("separation") !=
        std::string::npos);
}

TEST_CASE("load_config reports missing files as parse errors") {
  expect_error(Errc::parse_error, [] { load_config("/nonexistent/afshar.ini"); });
}

TEST_CASE("describe is deterministic and complete") {
  const ExperimentConfig c;
  const std::string once = describe(c);
  CHECK(once == describe(c));
  CHECK(once.find("fringe period = 0.00143") != std::string::npos);
  CHECK(once.find("magnification = 4") != std::string::npos);
}

TEST_CASE("figure names map to figures") {
  CHECK(figure_from_name("fig3") == Figure::fig3);
  CHECK(figure_from_name("custom") == Figure::custom);
  expect_error(Errc::validation_error, [] { figure_from_name("fig9"); });
}

TEST_CASE("runner output is byte-identical across runs") {
  ExperimentConfig c;
  c.grids.source.points = 2049;
  c.grids.interference.points = 4097;
  c.grids.detector.points = 1025;
  c.sweep.t_values = {0.0, 0.5, 1.0};
  c.sweep.d_values = {0.0, 127e-6};

  const std::filesystem::path base = std::filesystem::temp_directory_path() / "afshar_runner_test";
  std::filesystem::remove_all(base);
  const std::vector<std::string> first = run_figure(c, Figure::fig5, (base / "a").string());
  const std::vector<std::string> second = run_figure(c, Figure::fig5, (base / "b").string());
  REQUIRE(first.size() == second.size());
  REQUIRE(first.size() >= 3);  // csv, summary, gnuplot
  for (std::size_t i = 0; i < first.size(); ++i)
    CHECK(slurp(first[i]) == slurp(second[i]));

  // custom writes per-path detail next to the summary
  const std::vector<std::string> files = run_figure(c, Figure::custom, (base / "c").string());
  bool has_detector = false, has_summary = false;
  for (const std::string& f : files) {
    if (f.find("custom_detector.csv") != std::string::npos) has_detector = true;
    if (f.find("summary.txt") != std::string::npos) has_summary = true;
  }
  CHECK(has_detector);
  CHECK(has_summary);
  std::filesystem::remove_all(base);
}
