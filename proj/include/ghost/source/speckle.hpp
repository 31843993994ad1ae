#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ghost/core/field.hpp"
#include "ghost/core/geometry.hpp"
#include "ghost/optics/arm.hpp"
#include "ghost/source/philox.hpp"

namespace ghost {

/// Ensemble parameters of the pseudo-thermal source.
struct EnsembleConfig {
  std::size_t n_realizations = 10000;
  std::uint64_t seed = 1;
  SetupGeometry geometry;
  Grid1D grid{16384, 5e-6};
  /// Transverse position of the source disk center.
  double source_center = 0.0;

  void validate() const {
    if (n_realizations < 1) throw DomainError("EnsembleConfig: n_realizations must be >= 1");
    geometry.validate();
  }
};

/// Half-open index range [first, second) of grid samples on the source disk.
inline std::pair<std::size_t, std::size_t> source_support(const EnsembleConfig& config) {
  const auto& g = config.grid;
  const double r = 0.5 * config.geometry.source_diameter;
  const double lo = config.source_center - r;
  const double hi = config.source_center + r;
  if (lo < g.lower() - 1e-9 * g.dx() || hi > g.upper() + 1e-9 * g.dx()) {
    throw DomainError("source: aperture exceeds the grid window");
  }
  const std::size_t b = g.first_index_at_or_above(lo);
  const std::size_t e = g.first_index_at_or_above(hi);
  if (e <= b) throw DomainError("source: diameter is below one grid sample");
  return {b, e};
}

/// Writes realization k of the source field into `out` (grid().n() samples, zeroed outside the
/// disk). Each disk sample is an independent circular complex Gaussian with <|E|^2> = 1.
inline void fill_source_field(const EnsembleConfig& config, std::size_t k, std::span<cplx> out) {
  if (k >= config.n_realizations) {
    throw DomainError("sample_source_field: realization " + std::to_string(k) +
                      " out of range (n_realizations=" + std::to_string(config.n_realizations) +
                      ")");
  }
  const auto [b, e] = source_support(config);
  std::fill(out.begin(), out.end(), cplx{});
  const double s = 1.0 / std::numbers::sqrt2;
  for (std::size_t j = b; j < e; ++j) {
    const auto g = rng::normal_pair(config.seed, k, static_cast<std::uint32_t>(j));
    out[j] = {s * g[0], s * g[1]};
  }
}

inline ComplexField sample_source_field(const EnsembleConfig& config, std::size_t k) {
  ComplexField field(config.grid, config.geometry.wavelength);
  fill_source_field(config, k, field.amplitude());
  return field;
}

/// One coherent mode of the source: a unit excitation of one source sample, carried to both
/// detector planes. g1 and g2 are the Green's functions of the two arms for this mode.
struct Mode {
  double source_position;
  ComplexField g1;
  ComplexField g2;
};

/// Mode basis of the delta-correlated source: exactly one entry per source sample.
inline std::vector<Mode> mode_decomposition(const EnsembleConfig& config, const ArmPath& arm1,
                                            const ArmPath& arm2) {
  config.validate();
  const auto [b, e] = source_support(config);
  const double lambda = config.geometry.wavelength;
  const PreparedArm p1(arm1, config.grid, lambda);
  const PreparedArm p2(arm2, config.grid, lambda);
  std::vector<Mode> modes;
  modes.reserve(e - b);
  for (std::size_t j = b; j < e; ++j) {
    ComplexField basis(config.grid, lambda);
    basis[j] = 1.0;
    modes.push_back({config.grid.coordinate(j), p1(basis), p2(basis)});
  }
  return modes;
}

}  // namespace ghost
