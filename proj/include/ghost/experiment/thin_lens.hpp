#pragma once

#include <cmath>
#include <optional>

#include "ghost/core/errors.hpp"
#include "ghost/core/geometry.hpp"

namespace ghost {

/// Conjugate planes of the two-photon thin lens 1/s_o + 1/s_i = 1/f with s_o = d_B - d_A and
/// s_i = d_B'. The image is inverted: image coordinate = -magnification * object coordinate.
struct ThinLensSolution {
  double s_o = 0.0;
  double s_i = 0.0;
  double f = 0.0;
  double magnification = 0.0;
  /// 1/s_o + 1/s_i - 1/f in 1/m; zero when the third value was solved for.
  double residual = 0.0;

  /// Focal length that would make the given s_o, s_i exact conjugates.
  double effective_focal_length() const { return 1.0 / (1.0 / s_o + 1.0 / s_i); }
  double image_of(double object_x) const { return -magnification * object_x; }
};

/// Solves for whichever of s_o, s_i, f is missing. With all three given the residual is reported.
inline ThinLensSolution solve_thin_lens(std::optional<double> s_o, std::optional<double> s_i,
                                        std::optional<double> f) {
  const int known = int(s_o.has_value()) + int(s_i.has_value()) + int(f.has_value());
  if (known < 2) throw DomainError("solve_thin_lens: need two of s_o, s_i, f");
  for (const auto& v : {s_o, s_i, f}) {
    if (v && !(*v > 0.0)) throw DomainError("solve_thin_lens: known values must be positive");
  }
  ThinLensSolution sol;
  if (!s_i) {
    if (!(*s_o > *f)) throw DomainError("solve_thin_lens: s_o <= f gives no real image");
    sol.s_o = *s_o;
    sol.f = *f;
    sol.s_i = 1.0 / (1.0 / *f - 1.0 / *s_o);
  } else if (!s_o) {
    if (!(*s_i > *f)) throw DomainError("solve_thin_lens: s_i <= f gives no real object");
    sol.s_i = *s_i;
    sol.f = *f;
    sol.s_o = 1.0 / (1.0 / *f - 1.0 / *s_i);
  } else {
    sol.s_o = *s_o;
    sol.s_i = *s_i;
    sol.f = f ? *f : 1.0 / (1.0 / *s_o + 1.0 / *s_i);
    sol.residual = 1.0 / sol.s_o + 1.0 / sol.s_i - 1.0 / sol.f;
  }
  sol.magnification = sol.s_i / sol.s_o;
  return sol;
}

inline ThinLensSolution thin_lens_of(const SetupGeometry& g) {
  return solve_thin_lens(g.object_distance(), g.image_distance(), g.f);
}

/// Copy of `g` with d_B_prime replaced by the exact conjugate of s_o = d_B - d_A.
inline SetupGeometry focused(SetupGeometry g) {
  g.d_B_prime = solve_thin_lens(g.object_distance(), std::nullopt, g.f).s_i;
  return g;
}

}  // namespace ghost
