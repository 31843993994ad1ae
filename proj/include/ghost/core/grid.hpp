#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "ghost/core/errors.hpp"

namespace ghost {

/// Uniform 1D transverse sampling. Sample k sits at center + (k - n/2) * dx.
class Grid1D {
 public:
  Grid1D(std::size_t n, double dx, double center = 0.0) : n_(n), dx_(dx), center_(center) {
    if (n_ < 2 || (n_ & (n_ - 1)) != 0) {
      throw DomainError("Grid1D: sample count must be a power of two >= 2, got " + std::to_string(n));
    }
    if (!(dx_ > 0.0) || !std::isfinite(dx_)) throw DomainError("Grid1D: pitch must be positive");
    if (!std::isfinite(center_)) throw DomainError("Grid1D: center must be finite");
  }

  std::size_t n() const { return n_; }
  double dx() const { return dx_; }
  double center() const { return center_; }
  double span() const { return static_cast<double>(n_) * dx_; }

  double coordinate(std::size_t k) const {
    return center_ + (static_cast<double>(k) - static_cast<double>(n_ / 2)) * dx_;
  }
  /// First and one-past-last coordinate of the half-open window [lower, upper).
  double lower() const { return coordinate(0); }
  double upper() const { return center_ + static_cast<double>(n_ / 2) * dx_; }

  /// Nearest sample index; throws if x lies outside the window.
  std::size_t index_of(double x) const {
    const double k = std::round((x - center_) / dx_) + static_cast<double>(n_ / 2);
    if (k < 0.0 || k >= static_cast<double>(n_)) {
      throw DomainError("Grid1D: coordinate " + std::to_string(x) + " outside window");
    }
    return static_cast<std::size_t>(k);
  }

  /// Index of the first sample whose coordinate is >= x (may be n or 0 at the edges).
  /// A tolerance of 1e-9 samples absorbs rounding in x.
  std::size_t first_index_at_or_above(double x) const {
    const double k = std::ceil((x - center_) / dx_ + static_cast<double>(n_ / 2) - 1e-9);
    if (k <= 0.0) return 0;
    if (k >= static_cast<double>(n_)) return n_;
    return static_cast<std::size_t>(k);
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  std::size_t n_;
  double dx_;
  double center_;
};

}  // namespace ghost
