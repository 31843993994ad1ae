#pragma once

#include <algorithm>
#include <vector>

#include "ghost/correlation/correlation_map.hpp"
#include "ghost/source/speckle.hpp"

namespace ghost {

/// Exact thermal-light G2 from a mode basis (Gaussian moment theorem):
///
///   G2(x1, x2) = sum_q |g1(x1,q)|^2 sum_q' |g2(x2,q')|^2 + |sum_q g1*(x1,q) g2(x2,q)|^2
///
/// With a bucket D1 both terms are integrated over x1 with weight dx. The interference term is
/// then v^H A v with v = g2(x2, .) and the mode Gram matrix A_qq' = dx sum_x g1*(x,q) g1(x,q').
inline CorrelationMap g2_analytic(const std::vector<Mode>& modes, const DetectorLayout& layout) {
  if (modes.empty()) throw DomainError("g2_analytic: mode list is empty");
  const Grid1D grid = modes.front().g1.grid();
  const std::size_t nq = modes.size();
  const std::size_t rows = layout.rows();
  const std::size_t cols = layout.cols();

  CorrelationMap map;
  map.grid = grid;
  map.layout = layout;
  map.analytic = true;
  map.i1_mean.assign(rows, 0.0);
  map.i2_mean.assign(cols, 0.0);
  map.term1.assign(rows * cols, 0.0);
  map.term2.assign(rows * cols, 0.0);
  map.g2_raw.assign(rows * cols, 0.0);

  for (std::size_t c = 0; c < cols; ++c) {
    double s = 0.0;
    for (const auto& m : modes) s += std::norm(m.g2[layout.x2[c]]);
    map.i2_mean[c] = s;
  }

  if (layout.bucket) {
    // Only samples where some mode is nonzero contribute to the Gram matrix.
    std::vector<std::size_t> support;
    for (std::size_t k = 0; k < grid.n(); ++k) {
      if (std::any_of(modes.begin(), modes.end(), [k](const Mode& m) { return m.g1[k] != cplx{}; })) {
        support.push_back(k);
      }
    }
    std::vector<cplx> gram(nq * nq);
    double bucket = 0.0;
    for (std::size_t q = 0; q < nq; ++q) {
      for (std::size_t p = q; p < nq; ++p) {
        cplx s{};
        for (auto k : support) s += std::conj(modes[q].g1[k]) * modes[p].g1[k];
        s *= grid.dx();
        gram[q * nq + p] = s;
        gram[p * nq + q] = std::conj(s);
      }
      bucket += gram[q * nq + q].real();
    }
    map.i1_mean[0] = bucket;
    std::vector<cplx> v(nq);
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t q = 0; q < nq; ++q) v[q] = modes[q].g2[layout.x2[c]];
      double t2 = 0.0;
      for (std::size_t q = 0; q < nq; ++q) {
        cplx w{};
        for (std::size_t p = 0; p < nq; ++p) w += gram[q * nq + p] * std::conj(v[p]);
        t2 += (v[q] * w).real();
      }
      map.term1[c] = bucket * map.i2_mean[c];
      map.term2[c] = std::max(0.0, t2);
      map.g2_raw[c] = map.term1[c] + map.term2[c];
    }
  } else {
    for (std::size_t r = 0; r < rows; ++r) {
      const std::size_t k1 = layout.x1[r];
      double s = 0.0;
      for (const auto& m : modes) s += std::norm(m.g1[k1]);
      map.i1_mean[r] = s;
      for (std::size_t c = 0; c < cols; ++c) {
        const std::size_t k2 = layout.x2[c];
        cplx gamma{};
        for (const auto& m : modes) gamma += std::conj(m.g1[k1]) * m.g2[k2];
        const std::size_t i = map.at(r, c);
        map.term1[i] = map.i1_mean[r] * map.i2_mean[c];
        map.term2[i] = std::norm(gamma);
        map.g2_raw[i] = map.term1[i] + map.term2[i];
      }
    }
  }
  map.degenerate = std::any_of(map.i1_mean.begin(), map.i1_mean.end(), [](double v) { return !(v > 0.0); }) ||
                   std::any_of(map.i2_mean.begin(), map.i2_mean.end(), [](double v) { return !(v > 0.0); });
  return map;
}

}  // namespace ghost
