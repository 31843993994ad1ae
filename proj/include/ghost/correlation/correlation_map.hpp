#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ghost/core/grid.hpp"

namespace ghost {

/// Which samples the two detectors read. A bucket D1 integrates |E1|^2 dx over the whole grid.
struct DetectorLayout {
  bool bucket = true;
  std::vector<std::size_t> x1;
  std::vector<std::size_t> x2;

  static DetectorLayout bucket_detector(std::vector<std::size_t> x2) {
    return {true, {}, std::move(x2)};
  }
  static DetectorLayout resolved(std::vector<std::size_t> x1, std::vector<std::size_t> x2) {
    return {false, std::move(x1), std::move(x2)};
  }

  std::size_t rows() const { return bucket ? 1 : x1.size(); }
  std::size_t cols() const { return x2.size(); }
};

/// Contiguous sample indices whose coordinates lie in [lo, hi].
inline std::vector<std::size_t> indices_in(const Grid1D& grid, double lo, double hi) {
  std::vector<std::size_t> out;
  for (std::size_t k = grid.first_index_at_or_above(lo); k < grid.n(); ++k) {
    if (grid.coordinate(k) > hi + 1e-9 * grid.dx()) break;
    out.push_back(k);
  }
  return out;
}

/// Accumulated second-order correlation <I1 I2> with its first-order marginals.
/// Values are row-major [x1][x2]; a bucket layout has a single row.
struct CorrelationMap {
  Grid1D grid{2, 1.0};
  DetectorLayout layout;
  std::vector<double> g2_raw;
  /// <(I1 I2)^2>; Monte Carlo only.
  std::vector<double> g2_sq;
  std::vector<double> i1_mean;
  std::vector<double> i2_mean;
  /// Background <I1><I2> and interference |sum_q g1* g2|^2 terms; analytic only.
  std::vector<double> term1;
  std::vector<double> term2;
  std::size_t n_accumulated = 0;
  bool analytic = false;
  bool degenerate = false;

  std::size_t rows() const { return layout.rows(); }
  std::size_t cols() const { return layout.cols(); }
  std::size_t at(std::size_t r, std::size_t c) const { return r * cols() + c; }

  std::vector<double> x1_positions() const {
    std::vector<double> out;
    for (auto k : layout.x1) out.push_back(grid.coordinate(k));
    return out;
  }
  std::vector<double> x2_positions() const {
    std::vector<double> out;
    for (auto k : layout.x2) out.push_back(grid.coordinate(k));
    return out;
  }

  /// Standard error of <I1 I2> at (r, c) divided by <I1><I2>: the Monte Carlo error bound on the
  /// normalized g2. Zero for the analytic engine.
  double epsilon(std::size_t r, std::size_t c) const {
    if (analytic) return 0.0;
    if (n_accumulated < 2) return std::numeric_limits<double>::infinity();
    const std::size_t i = at(r, c);
    const double var = std::max(0.0, g2_sq[i] - g2_raw[i] * g2_raw[i]);
    const double se = std::sqrt(var / static_cast<double>(n_accumulated - 1));
    return se / (i1_mean[r] * i2_mean[c]);
  }
};

}  // namespace ghost
