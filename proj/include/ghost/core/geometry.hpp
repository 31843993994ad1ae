#pragma once

#include <string>

#include "ghost/core/errors.hpp"

namespace ghost {

/// Distances of the two-arm setup. All lengths in meters.
///
///   source --a--> BS --d_A--> object + bucket detector D1
///                  \--d_B--> lens f --d_B_prime--> scanning detector D2
struct SetupGeometry {
  double a = 125e-3;
  double d_A = 88e-3;
  double d_B = 212e-3;
  double d_B_prime = 268.5e-3;
  double f = 85e-3;
  /// Not given by the published setup; He-Ne default.
  double wavelength = 633e-9;
  double source_diameter = 200e-6;

  /// Published laboratory values.
  static SetupGeometry reference() { return {}; }

  /// Object distance of the unfolded two-photon lens picture.
  double object_distance() const { return d_B - d_A; }
  double image_distance() const { return d_B_prime; }
  double arm1_length() const { return a + d_A; }
  double arm2_length() const { return a + d_B; }
  double longest_path() const { return a + d_B + d_B_prime; }

  /// Transverse coherence (speckle) width lambda * (a + d_A) / D at the object plane.
  double object_speckle_width() const { return wavelength * arm1_length() / source_diameter; }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0)) throw DomainError(std::string("SetupGeometry: ") + name + " must be positive");
    };
    positive(a, "a");
    positive(d_A, "d_A");
    positive(d_B, "d_B");
    positive(d_B_prime, "d_B_prime");
    positive(f, "f");
    positive(wavelength, "wavelength");
    positive(source_diameter, "source_diameter");
    if (!(d_B > d_A)) {
      throw DomainError("SetupGeometry: d_B must exceed d_A (object distance d_B - d_A > 0)");
    }
  }
};

}  // namespace ghost
