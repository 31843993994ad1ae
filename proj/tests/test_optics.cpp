#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ghost/optics/arm.hpp"
#include "ghost/optics/propagation.hpp"
#include "ghost/source/philox.hpp"

using namespace ghost;

namespace {

constexpr double kLambda = 633e-9;

ComplexField random_field(const Grid1D& g, std::uint64_t seed) {
  ComplexField f(g, kLambda);
  for (std::size_t k = 0; k < g.n(); ++k) {
    const auto z = rng::normal_pair(seed, 0, k);
    f[k] = {z[0], z[1]};
  }
  return f;
}

ComplexField gaussian(const Grid1D& g, double w0) {
  ComplexField f(g, kLambda);
  for (std::size_t k = 0; k < g.n(); ++k) {
    const double x = g.coordinate(k);
    f[k] = std::exp(-x * x / (w0 * w0));
  }
  return f;
}

double second_moment_width(const ComplexField& f) {
  double s0 = 0.0;
  double s2 = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double x = f.grid().coordinate(k);
    s0 += std::norm(f[k]);
    s2 += x * x * std::norm(f[k]);
  }
  return 2.0 * std::sqrt(s2 / s0);
}

}  // namespace

TEST(Propagation, ZeroDistanceIsIdentity) {
  const auto f = random_field(Grid1D(256, 1e-5), 3);
  const auto out = fresnel_propagate(f, 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(out[k], f[k]);
}

TEST(Propagation, PlaneWaveGetsCarrierPhaseOnly) {
  const Grid1D g(1024, 1e-5);
  const double z = 0.1;
  const auto out = fresnel_propagate(ComplexField::uniform(g, kLambda), z);
  const cplx phase = carrier_phase(z, kLambda);
  for (std::size_t k = 0; k < g.n(); ++k) EXPECT_LT(std::abs(out[k] - phase), 1e-12);
}

TEST(Propagation, MatchesDirectSumOfSameOperator) {
  const std::size_t n = 128;
  const Grid1D g(n, 20e-6);
  const double z = 0.05;
  const auto in = random_field(g, 11);
  const auto fast = fresnel_propagate(in, z);

  const auto h = fresnel_transfer_function(g, kLambda, z);
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  std::vector<std::complex<long double>> kernel(n);
  for (std::size_t d = 0; d < n; ++d) {
    std::complex<long double> acc = 0.0L;
    for (std::size_t j = 0; j < n; ++j) {
      const long double ang = two_pi * static_cast<long double>((j * d) % n) / n;
      acc += std::complex<long double>(h[j].real(), h[j].imag()) *
             std::complex<long double>(std::cos(ang), std::sin(ang));
    }
    kernel[d] = acc / static_cast<long double>(n);
  }
  std::vector<cplx> direct(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<long double> acc = 0.0L;
    for (std::size_t m = 0; m < n; ++m) {
      acc += kernel[(k + n - m) % n] * std::complex<long double>(in[m].real(), in[m].imag());
    }
    direct[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  EXPECT_LE(relative_l2(fast.amplitude(), direct), 1e-10);
}

TEST(Propagation, GaussianBeamWaistLaw) {
  const Grid1D g(2048, 5e-6);
  const double w0 = 100e-6;
  const double z = 0.05;
  const auto in = gaussian(g, w0);
  EXPECT_NEAR(second_moment_width(in), w0, 1e-3 * w0);
  const double zr = std::numbers::pi * w0 * w0 / kLambda;
  const double expected = w0 * std::sqrt(1.0 + (z / zr) * (z / zr));
  const double got = second_moment_width(fresnel_propagate(in, z));
  EXPECT_LT(std::abs(got - expected) / expected, 5e-3);
}

TEST(Propagation, EnergyLinearityComposition) {
  const Grid1D g(2048, 10e-6);
  const auto a = random_field(g, 1);
  const auto b = random_field(g, 2);
  const auto pa = fresnel_propagate(a, 0.125);
  EXPECT_NEAR(pa.power() / a.power(), 1.0, 1e-10);

  ComplexField sum(g, kLambda);
  const cplx ca{0.3, -1.2};
  const cplx cb{2.0, 0.5};
  for (std::size_t k = 0; k < g.n(); ++k) sum[k] = ca * a[k] + cb * b[k];
  const auto ps = fresnel_propagate(sum, 0.125);
  const auto pb = fresnel_propagate(b, 0.125);
  std::vector<cplx> lin(g.n());
  for (std::size_t k = 0; k < g.n(); ++k) lin[k] = ca * pa[k] + cb * pb[k];
  EXPECT_LE(relative_l2(ps.amplitude(), lin), 1e-12);

  const auto two_step = fresnel_propagate(pa, 0.0625);
  const auto one_step = fresnel_propagate(a, 0.1875);
  EXPECT_LE(relative_l2(two_step.amplitude(), one_step.amplitude()), 1e-10);
}

TEST(Propagation, RefusesUndersampledDistance) {
  const auto f = ComplexField::uniform(Grid1D(256, 2e-6), kLambda);
  EXPECT_THROW(fresnel_propagate(f, 1.0), SamplingError);
  EXPECT_NO_THROW(fresnel_propagate(f, 1.0, SamplingPolicy::warn_only));
}

TEST(Lens, OppositeFocalLengthsCancel) {
  const auto f = random_field(Grid1D(1024, 5e-6), 5);
  const auto back = apply_lens(apply_lens(f, 0.085), -0.085);
  EXPECT_LE(relative_l2(back.amplitude(), f.amplitude()), 1e-14);
  const auto weak = apply_lens(f, 1e12);
  EXPECT_LE(relative_l2(weak.amplitude(), f.amplitude()), 1e-9);
  EXPECT_THROW(apply_lens(f, 0.0), DomainError);
}

TEST(Lens, FocalSpotMatchesSincSquared) {
  const Grid1D g(8192, 5e-6);
  const double width = 400 * g.dx();
  const double focal = 0.2;
  const auto slit = make_slit(g, 0.0, width);
  const double d = slit.features()[0].width();
  auto f = apply_mask(ComplexField::uniform(g, kLambda), slit);
  f = fresnel_propagate(apply_lens(f, focal), focal);
  const std::size_t c = g.index_of(0.0);
  const double peak = std::norm(f[c]);
  double worst = 0.0;
  const double zero = kLambda * focal / d;
  for (std::size_t k = 0; k < g.n(); ++k) {
    const double x = g.coordinate(k);
    if (std::abs(x) > 3.0 * zero) continue;
    const double u = std::numbers::pi * d * x / (kLambda * focal);
    const double sinc = u == 0.0 ? 1.0 : std::sin(u) / u;
    worst = std::max(worst, std::abs(std::norm(f[k]) / peak - sinc * sinc));
  }
  EXPECT_LT(worst, 0.02);
}

TEST(Mask, ClearOpaqueAndPowerRatio) {
  const Grid1D g(2048, 5e-6);
  const auto f = random_field(g, 9);
  const auto clear = apply_mask(f, TransmissionMask::clear(g));
  for (std::size_t k = 0; k < g.n(); ++k) EXPECT_EQ(clear[k], f[k]);
  EXPECT_EQ(apply_mask(f, TransmissionMask::opaque(g)).power(), 0.0);

  const auto u = ComplexField::uniform(g, kLambda);
  const auto slit = make_slit(g, 0.0, 1e-3);
  EXPECT_NEAR(apply_mask(u, slit).power() / u.power(), slit.open_fraction(), 1e-14);
  EXPECT_THROW(apply_mask(u, TransmissionMask::clear(Grid1D(1024, 5e-6))), DomainError);
}

TEST(Beam, SplitHalvesPower) {
  const auto f = random_field(Grid1D(512, 5e-6), 4);
  const auto [a, b] = split_beam(f);
  EXPECT_NEAR(a.power(), 0.5 * f.power(), 1e-12 * f.power());
  EXPECT_NEAR(b.power(), 0.5 * f.power(), 1e-12 * f.power());
}

TEST(Arm, MasklessPathConservesEnergy) {
  const Grid1D g(16384, 5e-6);
  auto f = random_field(g, 21);
  for (std::size_t k = 0; k < g.n(); ++k) {
    if (std::abs(g.coordinate(k)) > 1e-3) f[k] = 0.0;
  }
  ArmPath path;
  path.propagate(0.125).propagate(0.212).lens(0.085).propagate(0.27);
  const auto out = run_arm(f, path, SamplingPolicy::warn_only);
  EXPECT_NEAR(out.power() / f.power(), 1.0, 1e-10);
}

TEST(Arm, PreparedMatchesStepwise) {
  const Grid1D g(4096, 10e-6);
  const auto f = random_field(g, 8);
  const auto slit = make_slit(g, 0.0, 8e-3);
  ArmPath path;
  path.propagate(0.125).propagate(0.0625).mask(slit).lens(0.1).propagate(0.25);
  auto step = fresnel_propagate(fresnel_propagate(f, 0.125), 0.0625);
  step = fresnel_propagate(apply_lens(apply_mask(step, slit), 0.1), 0.25);
  const auto prepared = run_arm(f, path);
  EXPECT_LE(relative_l2(prepared.amplitude(), step.amplitude()), 1e-10);
  EXPECT_DOUBLE_EQ(path.total_distance(), 0.4375);
  EXPECT_THROW(ArmPath().propagate(-1.0), DomainError);
  EXPECT_THROW(ArmPath().lens(0.0), DomainError);
}
