#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ghost/core/field.hpp"
#include "ghost/core/mask.hpp"
#include "ghost/core/sampling.hpp"
#include "ghost/optics/fft.hpp"

namespace ghost {

enum class SamplingPolicy { refuse, warn_only };

/// exp(i*2*pi*z/lambda) reduced in extended precision; the raw phase reaches ~1e6 rad.
inline cplx carrier_phase(double distance, double wavelength) {
  const long double cycles =
      std::fmod(static_cast<long double>(distance) / static_cast<long double>(wavelength), 1.0L);
  const long double phase = 2.0L * std::numbers::pi_v<long double> * cycles;
  return {static_cast<double>(std::cos(phase)), static_cast<double>(std::sin(phase))};
}

/// Fresnel transfer function H(nu) = exp(i 2 pi z / lambda) exp(-i pi lambda z nu^2) in DFT order.
inline std::vector<cplx> fresnel_transfer_function(const Grid1D& grid, double wavelength,
                                                   double distance) {
  std::vector<cplx> h(grid.n());
  const cplx carrier = carrier_phase(distance, wavelength);
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double nu = fft::frequency(j, grid.n(), grid.dx());
    const double phi = -std::numbers::pi * wavelength * distance * nu * nu;
    h[j] = carrier * cplx{std::cos(phi), std::sin(phi)};
  }
  return h;
}

/// Multiplies the spectrum of `field` by `transfer` in place.
inline void apply_transfer(std::span<cplx> field, std::span<const cplx> transfer) {
  fft::forward(field);
  for (std::size_t j = 0; j < field.size(); ++j) field[j] *= transfer[j];
  fft::inverse(field);
}

/// Paraxial free-space propagation over `distance` (may be negative). Grid is preserved.
inline ComplexField fresnel_propagate(ComplexField field, double distance,
                                      SamplingPolicy policy = SamplingPolicy::refuse) {
  if (distance == 0.0) return field;
  const auto report = validate_sampling(field.grid(), field.wavelength(), distance);
  if (!report.ok && policy == SamplingPolicy::refuse) {
    throw SamplingError("fresnel_propagate: " + report.summary());
  }
  const auto h = fresnel_transfer_function(field.grid(), field.wavelength(), distance);
  apply_transfer(field.amplitude(), h);
  return field;
}

/// Thin-lens phase exp(-i pi x^2 / (lambda f)) sampled on the grid.
inline std::vector<cplx> lens_phase(const Grid1D& grid, double wavelength, double focal_length) {
  if (focal_length == 0.0) throw DomainError("lens: focal length must be nonzero");
  std::vector<cplx> p(grid.n());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double x = grid.coordinate(k);
    const double phi = -std::numbers::pi * x * x / (wavelength * focal_length);
    p[k] = {std::cos(phi), std::sin(phi)};
  }
  return p;
}

inline ComplexField apply_lens(ComplexField field, double focal_length) {
  const auto p = lens_phase(field.grid(), field.wavelength(), focal_length);
  for (std::size_t k = 0; k < field.size(); ++k) field[k] *= p[k];
  return field;
}

inline ComplexField apply_mask(ComplexField field, const TransmissionMask& mask) {
  if (!(field.grid() == mask.grid())) throw DomainError("apply_mask: grid mismatch");
  for (std::size_t k = 0; k < field.size(); ++k) field[k] *= mask[k];
  return field;
}

/// 50/50 non-polarizing beam splitter. No transverse flip on reflection.
inline std::pair<ComplexField, ComplexField> split_beam(const ComplexField& field) {
  ComplexField out = field;
  const double s = std::numbers::sqrt2 / 2.0;
  for (auto& v : out.amplitude()) v *= s;
  return {out, out};
}

}  // namespace ghost
