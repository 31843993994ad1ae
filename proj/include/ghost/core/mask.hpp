#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "ghost/core/field.hpp"

namespace ghost {

/// Transparent interval [lower, upper) in grid coordinates.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double center() const { return 0.5 * (lower + upper); }
  double width() const { return upper - lower; }
};

/// Object/aperture transmittance sampled on a grid, |t| <= 1.
class TransmissionMask {
 public:
  /// Threshold on |t| separating opaque from transparent samples.
  static constexpr double kFeatureThreshold = 0.5;

  TransmissionMask(Grid1D grid, std::vector<cplx> t) : grid_(grid), t_(std::move(t)) {
    if (t_.size() != grid_.n()) throw DomainError("TransmissionMask: length does not match grid");
    for (const auto& v : t_) {
      if (!(std::abs(v) <= 1.0 + 1e-12)) throw DomainError("TransmissionMask: |t| must be <= 1");
    }
  }

  static TransmissionMask opaque(Grid1D grid) { return {grid, std::vector<cplx>(grid.n(), 0.0)}; }
  static TransmissionMask clear(Grid1D grid) { return {grid, std::vector<cplx>(grid.n(), 1.0)}; }

  const Grid1D& grid() const { return grid_; }
  std::span<const cplx> transmittance() const { return t_; }
  const cplx& operator[](std::size_t k) const { return t_[k]; }

  bool transparent(std::size_t k) const { return std::abs(t_[k]) > kFeatureThreshold; }

  /// Disjoint transparent runs, in index order (no wrap at the window edge).
  std::vector<std::pair<std::size_t, std::size_t>> feature_runs() const {
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    std::size_t k = 0;
    while (k < t_.size()) {
      if (!transparent(k)) {
        ++k;
        continue;
      }
      const std::size_t begin = k;
      while (k < t_.size() && transparent(k)) ++k;
      runs.emplace_back(begin, k);
    }
    return runs;
  }

  std::size_t feature_count() const { return feature_runs().size(); }

  std::vector<Interval> features() const {
    std::vector<Interval> out;
    for (const auto& [b, e] : feature_runs()) {
      out.push_back({grid_.coordinate(b), grid_.coordinate(e - 1) + grid_.dx()});
    }
    return out;
  }

  /// Sum |t|^2 / n.
  double open_fraction() const {
    double s = 0.0;
    for (const auto& v : t_) s += std::norm(v);
    return s / static_cast<double>(t_.size());
  }

  /// Smallest interval covering every transparent feature. Empty mask -> zero-width at center.
  Interval support() const {
    const auto f = features();
    if (f.empty()) return {grid_.center(), grid_.center()};
    return {f.front().lower, f.back().upper};
  }

 private:
  Grid1D grid_;
  std::vector<cplx> t_;
};

namespace detail {

inline TransmissionMask binary_interval(const Grid1D& grid, double lower, double upper,
                                        const char* what) {
  const double tol = 1e-9 * grid.dx();
  if (lower < grid.lower() - tol || upper > grid.upper() + tol) {
    throw DomainError(std::string(what) + ": aperture [" + std::to_string(lower) + ", " +
                      std::to_string(upper) + ") lies outside the grid window");
  }
  const std::size_t b = grid.first_index_at_or_above(lower);
  const std::size_t e = grid.first_index_at_or_above(upper);
  if (e <= b) throw DomainError(std::string(what) + ": aperture narrower than one grid sample");
  std::vector<cplx> t(grid.n(), 0.0);
  std::fill(t.begin() + static_cast<std::ptrdiff_t>(b), t.begin() + static_cast<std::ptrdiff_t>(e),
            cplx{1.0, 0.0});
  return {grid, std::move(t)};
}

}  // namespace detail

/// Binary slit, transparent on [center - width/2, center + width/2).
inline TransmissionMask make_slit(const Grid1D& grid, double center, double width) {
  if (!(width > 0.0)) throw DomainError("make_slit: width must be positive");
  return detail::binary_interval(grid, center - 0.5 * width, center + 0.5 * width, "make_slit");
}

/// 1D cross-section of a circular pinhole (a fiber tip, for instance).
inline TransmissionMask make_pinhole(const Grid1D& grid, double center, double diameter) {
  if (!(diameter > 0.0)) throw DomainError("make_pinhole: diameter must be positive");
  return detail::binary_interval(grid, center - 0.5 * diameter, center + 0.5 * diameter,
                                 "make_pinhole");
}

/// Pointwise max(|a|, |b|) union of two masks on the same grid.
inline TransmissionMask combine_max(const TransmissionMask& a, const TransmissionMask& b) {
  if (!(a.grid() == b.grid())) throw DomainError("combine_max: grid mismatch");
  std::vector<cplx> t(a.grid().n());
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = std::abs(a[k]) >= std::abs(b[k]) ? a[k] : b[k];
  }
  return {a.grid(), std::move(t)};
}

/// Identical slits of the given width at each center. Slits that touch on the grid are an error.
inline TransmissionMask make_slits(const Grid1D& grid, const std::vector<double>& centers,
                                   double width) {
  if (centers.empty()) throw DomainError("make_slits: need at least one slit");
  TransmissionMask out = TransmissionMask::opaque(grid);
  for (double c : centers) out = combine_max(out, make_slit(grid, c, width));
  if (out.feature_count() != centers.size()) {
    throw DomainError("make_slits: slits overlap or touch on the grid");
  }
  return out;
}

/// Two slits centered at +-separation/2.
inline TransmissionMask make_double_slit(const Grid1D& grid, double separation, double width) {
  if (!(width > 0.0)) throw DomainError("make_double_slit: width must be positive");
  if (!(separation - width >= grid.dx())) {
    throw DomainError("make_double_slit: slits overlap (gap " +
                      std::to_string(separation - width) + " m is below one grid sample)");
  }
  return make_slits(grid, {-0.5 * separation, 0.5 * separation}, width);
}

}  // namespace ghost
