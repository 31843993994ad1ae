#include <gtest/gtest.h>

#include <cmath>

#include "ghost/experiment/peaks.hpp"
#include "ghost/experiment/scans.hpp"
#include "ghost/experiment/thin_lens.hpp"
#include "ghost/experiment/trace.hpp"

using namespace ghost;

TEST(ThinLens, SolvesImageDistance) {
  const auto s = solve_thin_lens(0.124, std::nullopt, 0.085);
  EXPECT_NEAR(s.s_i, 0.270256, 1e-6);
  EXPECT_NEAR(s.magnification, 2.1795, 1e-4);
  EXPECT_EQ(s.residual, 0.0);
  EXPECT_DOUBLE_EQ(s.image_of(2e-3), -s.magnification * 2e-3);
}

TEST(ThinLens, ReportsResidualWhenOverdetermined) {
  const auto s = thin_lens_of(SetupGeometry::reference());
  EXPECT_NEAR(s.effective_focal_length(), 0.0848, 1e-4);
  EXPECT_NEAR(s.magnification, 2.165, 1e-3);
  EXPECT_GT(s.residual, 0.0);
  const auto f = focused(SetupGeometry::reference());
  EXPECT_NEAR(thin_lens_of(f).residual, 0.0, 1e-12);
}

TEST(ThinLens, TwoFTwoFAndErrors) {
  const auto s = solve_thin_lens(0.2, std::nullopt, 0.1);
  EXPECT_NEAR(s.s_i, 0.2, 1e-15);
  EXPECT_NEAR(s.magnification, 1.0, 1e-14);
  EXPECT_NEAR(solve_thin_lens(0.2, 0.2, std::nullopt).f, 0.1, 1e-15);
  EXPECT_NEAR(solve_thin_lens(std::nullopt, 0.2, 0.1).s_o, 0.2, 1e-15);
  EXPECT_THROW(solve_thin_lens(0.05, std::nullopt, 0.1), DomainError);
  EXPECT_THROW(solve_thin_lens(0.2, std::nullopt, std::nullopt), DomainError);
  EXPECT_THROW(solve_thin_lens(-0.2, std::nullopt, 0.1), DomainError);
}

namespace {

ImageTrace synthetic(std::vector<double> v) {
  ImageTrace t;
  for (std::size_t i = 0; i < v.size(); ++i) t.x2.push_back(static_cast<double>(i));
  t.coincidence = std::move(v);
  t.epsilon.assign(t.x2.size(), 0.0);
  t.image_window = {0.0, static_cast<double>(t.x2.size() - 1)};
  return t;
}

}  // namespace

TEST(Visibility, Definition) {
  EXPECT_DOUBLE_EQ(visibility(synthetic({1.0, 2.0, 1.0})), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(visibility(synthetic({-0.01, 1.0, 0.0})), 1.0);
  EXPECT_DOUBLE_EQ(visibility(synthetic({1.0, 1.0})), 0.0);
  EXPECT_THROW(visibility(synthetic({1.0, 2.0}), Interval{0.5, 0.9}), DomainError);
  EXPECT_DOUBLE_EQ(predicted_visibility(1), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(predicted_visibility(2), 0.2);
  EXPECT_DOUBLE_EQ(predicted_visibility(3), 1.0 / 7.0);
  EXPECT_THROW(predicted_visibility(0), DomainError);
}

TEST(Visibility, WindowMapping) {
  const auto w = image_window({1e-3, 1.2e-3}, -2.0, 0.1e-3, {-6e-3, 6e-3});
  EXPECT_NEAR(w.lower, -2.4e-3 - 0.6e-3, 1e-15);
  EXPECT_NEAR(w.upper, -2.0e-3 + 0.6e-3, 1e-15);
  const auto clipped = image_window({2e-3, 3e-3}, 1.0, 1e-3, {0.0, 4e-3});
  EXPECT_DOUBLE_EQ(clipped.upper, 4e-3);
}

TEST(Peaks, FindsProminentPeaksAndWidth) {
  std::vector<double> x;
  std::vector<double> v;
  const double s = 2.0;
  for (int i = 0; i < 200; ++i) {
    x.push_back(i);
    v.push_back(std::exp(-0.5 * std::pow((i - 60) / s, 2)) + std::exp(-0.5 * std::pow((i - 140) / s, 2)) +
                0.01 * std::sin(i * 1.3));
  }
  const auto p = find_peaks(v);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p[0], 60u);
  EXPECT_EQ(p[1], 140u);
  EXPECT_NEAR(peak_fwhm(x, v, p[0]), 2.0 * std::sqrt(2.0 * std::log(2.0)) * s, 0.1);
}

namespace {

EnsembleConfig default_config() { return EnsembleConfig{}; }

}  // namespace

TEST(Scan, PinholeImageIsInvertedAndMagnified) {
  const auto g = focused(SetupGeometry::reference());
  const auto cfg = default_config();
  const auto t = ghost_image_scan(g, make_pinhole(cfg.grid, 2e-3, 60e-6), cfg);
  const auto peak = std::max_element(t.coincidence.begin(), t.coincidence.end()) - t.coincidence.begin();
  EXPECT_NEAR(t.x2[peak], -thin_lens_of(g).magnification * 2e-3, 0.05e-3);
  EXPECT_TRUE(t.in_focus);
  EXPECT_TRUE(t.warnings.empty());
  for (double s : t.singles1) EXPECT_EQ(s, 1.0);
}

TEST(Scan, OffFocusGeometryWarns) {
  const auto cfg = default_config();
  const auto t = ghost_image_scan(SetupGeometry::reference(), make_slit(cfg.grid, 0.0, 0.2e-3), cfg);
  EXPECT_FALSE(t.in_focus);
  ASSERT_EQ(t.warnings.size(), 1u);
}

TEST(Scan, SigmaPlaneIsUprightUnitMagnification) {
  const auto cfg = default_config();
  const auto t = pseudo_object_scan(SetupGeometry::reference(), make_pinhole(cfg.grid, 1e-3, 60e-6), cfg);
  const auto peak = std::max_element(t.coincidence.begin(), t.coincidence.end()) - t.coincidence.begin();
  EXPECT_NEAR(t.x2[peak], 1e-3, cfg.grid.dx());
  EXPECT_DOUBLE_EQ(t.mapping, 1.0);
}

TEST(Scan, ThreeSlitVisibilityAndFluctuationMode) {
  const auto g = focused(SetupGeometry::reference());
  const auto cfg = default_config();
  const auto object = make_slits(cfg.grid, {-2e-3, 0.0, 2e-3}, 0.2e-3);
  EXPECT_NEAR(visibility(ghost_image_scan(g, object, cfg)), predicted_visibility(3), 0.02);
  ScanOptions opt;
  opt.mode = TraceMode::fluctuation;
  EXPECT_GT(visibility(ghost_image_scan(g, object, cfg, opt)), 0.98);
}

TEST(Scan, RejectsEmptyObject) {
  const auto cfg = default_config();
  EXPECT_THROW(ghost_image_scan(SetupGeometry::reference(), TransmissionMask::opaque(cfg.grid), cfg), DomainError);
}

TEST(Defocus, WideSourcePeaksAtConjugatePlane) {
  auto g = focused(SetupGeometry::reference());
  g.source_diameter = 2e-3;
  const auto cfg = default_config();
  const auto sweep = defocus_sweep(g, make_pinhole(cfg.grid, 0.0, 60e-6), cfg, {-50e-3, -25e-3, 0.0, 25e-3, 50e-3});
  ASSERT_EQ(sweep.size(), 5u);
  std::size_t best = 0;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    if (sweep[i].visibility > sweep[best].visibility) best = i;
  }
  EXPECT_EQ(sweep[best].delta, 0.0);
  EXPECT_GT(sweep[2].visibility - sweep[0].visibility, 0.02);
  EXPECT_THROW(defocus_sweep(g, make_pinhole(cfg.grid, 0.0, 60e-6), cfg, {-1.0}), DomainError);
}
