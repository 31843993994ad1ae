#include <gtest/gtest.h>

#include <filesystem>

#include "ghost/io/config.hpp"
#include "ghost/io/export.hpp"
#include "ghost/io/scenarios.hpp"

using namespace ghost;
using namespace ghost::io;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ghost_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::size_t error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST(Config, ParsesUnitsAndComments) {
  const auto c = parse_config(
      "# setup\n"
      "d_A = 88mm   # object arm\n"
      "wavelength = 633nm\n"
      "source_diameter = 200um\n"
      "grid_dx = 5\xC2\xB5m\n"
      "a = 0.125 m\n"
      "engine = mc\n"
      "pinhole_shifts = -2mm, 0mm, 2.5mm\n"
      "lens_aperture = none\n");
  EXPECT_DOUBLE_EQ(c.geometry.d_A, 0.088);
  EXPECT_DOUBLE_EQ(c.geometry.wavelength, 633e-9);
  EXPECT_DOUBLE_EQ(c.geometry.source_diameter, 200e-6);
  EXPECT_DOUBLE_EQ(c.grid_dx, 5e-6);
  EXPECT_DOUBLE_EQ(c.geometry.a, 0.125);
  EXPECT_EQ(c.engine, Engine::mc);
  EXPECT_EQ(c.pinhole_shifts, (std::vector<double>{-2e-3, 0.0, 2.5e-3}));
  EXPECT_EQ(c.lens_aperture, 0.0);
}

TEST(Config, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("a = 125mm\nd_a = 88mm\n"), 2u);
  EXPECT_EQ(error_line("\n\nwavelength = 633\n"), 3u);
  EXPECT_EQ(error_line("a = 1mm\na = 2mm\n"), 2u);
  EXPECT_EQ(error_line("engine = gpu\n"), 1u);
  EXPECT_EQ(error_line("grid_n 8\n"), 1u);
  EXPECT_EQ(error_line("realizations = -4\n"), 1u);
  EXPECT_EQ(error_line("f = -85mm\n"), 1u);
  EXPECT_EQ(error_line("grid_n = 1000\n"), 0u);
  EXPECT_THROW(load_config("/nonexistent/ghost.cfg"), ConfigError);
}

TEST(Config, ShippedFileHasPublishedValues) {
  const auto c = load_config(GHOST_SOURCE_DIR "/configs/paper.cfg");
  EXPECT_DOUBLE_EQ(c.geometry.a, 0.125);
  EXPECT_DOUBLE_EQ(c.geometry.d_A, 0.088);
  EXPECT_DOUBLE_EQ(c.geometry.d_B, 0.212);
  EXPECT_DOUBLE_EQ(c.geometry.d_B_prime, 0.2685);
  EXPECT_DOUBLE_EQ(c.geometry.f, 0.085);
  EXPECT_DOUBLE_EQ(c.geometry.wavelength, 633e-9);
  EXPECT_DOUBLE_EQ(c.geometry.source_diameter, 200e-6);
}

TEST(Config, EchoRoundTrips) {
  RunConfig c;
  c.seed = 99;
  c.pinhole_shifts = {1e-3};
  std::string text;
  for (const auto& [k, v] : config_entries(c)) text += k + " = " + v + "\n";
  const auto back = parse_config(text);
  EXPECT_EQ(config_entries(back), config_entries(c));
}

TEST(Csv, LayoutAndRoundTrip) {
  ImageTrace t;
  t.x2 = {-1e-3, 0.0, 1.0 / 3.0};
  t.coincidence = {1.0000000000000002, 2.0 / 3.0, 1e-300};
  t.singles1 = {1.0, 1.0, 1.0};
  t.singles2 = {0.1, 0.2, 0.7};
  const auto text = trace_csv(t);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.substr(0, text.find('\n')), "x2_m,coincidence,singles1,singles2");
  const auto back = parse_trace_csv(text);
  EXPECT_EQ(back.x2, t.x2);
  EXPECT_EQ(back.coincidence, t.coincidence);
  EXPECT_EQ(back.singles2, t.singles2);
  EXPECT_EQ(trace_csv(ImageTrace{}), "x2_m,coincidence,singles1,singles2\n");
  EXPECT_THROW(parse_trace_csv("x,y\n"), IoError);
}

TEST(Pgm, ScalingAndConstantField) {
  ImageScaling s;
  const auto bytes = pgm_bytes({1.0, 3.0, 2.0, 1.0}, 2, 2, &s);
  const std::string header = "P5\n2 2\n65535\n";
  ASSERT_EQ(bytes.substr(0, header.size()), header);
  const auto px = [&](std::size_t i) {
    return (static_cast<unsigned char>(bytes[header.size() + 2 * i]) << 8) |
           static_cast<unsigned char>(bytes[header.size() + 2 * i + 1]);
  };
  EXPECT_EQ(px(0), 0);
  EXPECT_EQ(px(1), 65535);
  EXPECT_EQ(px(2), 32768);
  EXPECT_FALSE(s.constant);
  EXPECT_EQ(s.min, 1.0);

  const auto flat = pgm_bytes(std::vector<double>(6, 4.2), 2, 3, &s);
  EXPECT_TRUE(s.constant);
  for (std::size_t i = header.size(); i < flat.size(); ++i) EXPECT_EQ(flat[i], '\0');
  EXPECT_THROW(pgm_bytes({1.0, 2.0}, 2, 2), DomainError);
}

TEST(Pgm, IdenticalArmMapIsBrightestOnDiagonal) {
  EnsembleConfig c;
  c.grid = Grid1D(4096, 10e-6);
  ArmPath arm;
  arm.propagate(0.213);
  const auto idx = indices_in(c.grid, -1e-3, 1e-3);
  const auto g2 = siegert_normalize(g2_analytic(mode_decomposition(c, arm, arm), DetectorLayout::resolved(idx, idx)));
  const auto bytes = pgm_bytes(g2.values, g2.rows, g2.cols);
  const std::size_t off = bytes.size() - 2 * g2.values.size();
  for (std::size_t r = 0; r < g2.rows; ++r) {
    const std::size_t d = off + 2 * (r * g2.cols + r);
    EXPECT_EQ(static_cast<unsigned char>(bytes[d]), 0xFF);
  }
}

TEST(Digest, Sha256KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Scenario, UnknownNameListsValidOnes) {
  try {
    run_scenario("fig5", RunConfig{}, scratch("unknown").string());
    FAIL();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    for (const auto& n : scenario_names()) EXPECT_NE(what.find(n), std::string::npos);
  }
}

TEST(Scenario, SamplingFailureIsReported) {
  RunConfig c;
  c.grid_n = 8192;
  c.grid_dx = 2e-6;
  EXPECT_THROW(run_scenario("fig4-doubleslit", c, scratch("sampling").string()), SamplingError);
}

TEST(Scenario, DoubleSlitManifestMatchesFiles) {
  const auto dir = scratch("doubleslit");
  const auto m = run_scenario("fig4-doubleslit", RunConfig{}, dir.string());
  ASSERT_EQ(m.outputs.size(), 3u);
  for (const auto& o : m.outputs) EXPECT_EQ(sha256_hex(read_file((dir / o.name).string())), o.sha256);
  const auto manifest = read_file((dir / "manifest.txt").string());
  EXPECT_EQ(manifest, m.text());
  for (const auto& [k, v] : config_entries(RunConfig{})) {
    EXPECT_NE(manifest.find("\n" + k + " = " + v + "\n"), std::string::npos) << k;
  }
  EXPECT_NE(manifest.find("image.doubleslit.pgm.max = "), std::string::npos);
  EXPECT_EQ(manifest.find("wall"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(dir / "timing.txt"));

  const auto strip = read_file((dir / "doubleslit.pgm").string());
  const auto t = parse_trace_csv(read_file((dir / "doubleslit.csv").string()));
  const std::size_t off = strip.size() - 2 * t.size();
  std::size_t bands = 0;
  bool bright = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const bool b = static_cast<unsigned char>(strip[off + 2 * i]) >= 0x80;
    if (b && !bright) ++bands;
    bright = b;
  }
  EXPECT_EQ(bands, 2u);

  const auto again = run_scenario("fig4-doubleslit", RunConfig{}, scratch("doubleslit2").string());
  EXPECT_EQ(again.text(), m.text());
}

TEST(Scenario, UnwritableOutputIsIoError) {
  EXPECT_THROW(run_scenario("sigma-plane", RunConfig{}, "/proc/ghost/out"), IoError);
}
