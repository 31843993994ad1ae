#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ghost/core/grid.hpp"

namespace ghost {

/// Lens phase chirp to check alongside the propagation distance.
struct LensSampling {
  double focal_length;
  /// Clear aperture diameter; zero means the lens fills the window.
  double aperture = 0.0;
};

/// Outcome of validate_sampling. Margins are ratios that must be >= 1.
struct SamplingReport {
  bool ok = true;
  /// n*dx^2 / (lambda*z): the transfer function exp(-i pi lambda z nu^2) is sampled and a
  /// full-band point source does not wrap around the periodic window.
  double chirp_margin = std::numeric_limits<double>::infinity();
  /// Largest pitch the propagation tolerates, lambda*z/(n*dx) compared from below.
  double dx_min = 0.0;
  /// window / (4 * largest aperture).
  double guard_margin = std::numeric_limits<double>::infinity();
  /// lambda*|f|/(2*dx) over the lens half-aperture.
  std::optional<double> lens_margin;
  std::vector<std::string> messages;

  std::string summary() const {
    std::ostringstream os;
    os << (ok ? "pass" : "fail") << ": chirp_margin=" << chirp_margin
       << " guard_margin=" << guard_margin;
    if (lens_margin) os << " lens_margin=" << *lens_margin;
    for (const auto& m : messages) os << "; " << m;
    return os.str();
  }
};

/// Checks that the grid can carry a Fresnel propagation over max_distance without the diffraction
/// cone of a single sample wrapping around the window, that the window leaves a 4x guard band
/// around the largest aperture, and (optionally) that a lens phase is sampled over its aperture.
inline SamplingReport validate_sampling(const Grid1D& grid, double wavelength, double max_distance,
                                        double largest_aperture = 0.0,
                                        std::optional<LensSampling> lens = std::nullopt) {
  SamplingReport r;
  const double n = static_cast<double>(grid.n());
  const double dx = grid.dx();
  const double z = std::abs(max_distance);
  if (z > 0.0) {
    r.dx_min = wavelength * z / (n * dx);
    r.chirp_margin = n * dx * dx / (wavelength * z);
    if (r.chirp_margin < 1.0) {
      r.ok = false;
      std::ostringstream os;
      os << "chirp bound violated: dx=" << dx << " m < lambda*z/(n*dx)=" << r.dx_min
         << " m (wraparound over " << z << " m)";
      r.messages.push_back(os.str());
    }
  }
  if (largest_aperture > 0.0) {
    r.guard_margin = grid.span() / (4.0 * largest_aperture);
    if (r.guard_margin < 1.0) {
      r.ok = false;
      std::ostringstream os;
      os << "guard band violated: window " << grid.span() << " m < 4 x aperture "
         << largest_aperture << " m (wraparound warning)";
      r.messages.push_back(os.str());
    }
  }
  if (lens) {
    const double half = lens->aperture > 0.0 ? 0.5 * lens->aperture : 0.5 * grid.span();
    const double limit = wavelength * std::abs(lens->focal_length) / (2.0 * dx);
    r.lens_margin = limit / half;
    if (*r.lens_margin < 1.0) {
      r.ok = false;
      std::ostringstream os;
      os << "lens chirp aliased: half-aperture " << half << " m exceeds lambda*|f|/(2*dx)="
         << limit << " m";
      r.messages.push_back(os.str());
    }
  }
  return r;
}

}  // namespace ghost
