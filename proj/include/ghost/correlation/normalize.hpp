#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "ghost/correlation/correlation_map.hpp"

namespace ghost {

/// Normalized correlation with its per-point Monte Carlo error (zero for the analytic engine).
struct NormalizedMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;
  std::vector<double> epsilon;
  bool degenerate = false;

  double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  double eps(std::size_t r, std::size_t c) const { return epsilon[r * cols + c]; }
};

/// g2 = <I1 I2> / (<I1><I2>). For analytic maps this is evaluated as 1 + term2/term1, i.e. the
/// Siegert form 1 + |g1_12|^2. Points with a zero marginal are NaN and flag the result degenerate.
inline NormalizedMap siegert_normalize(const CorrelationMap& map) {
  NormalizedMap out{map.rows(), map.cols(), {}, {}, map.degenerate};
  out.values.resize(map.rows() * map.cols());
  out.epsilon.resize(out.values.size());
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      const std::size_t i = map.at(r, c);
      const double denom = map.i1_mean[r] * map.i2_mean[c];
      if (!(denom > 0.0)) {
        out.values[i] = nan;
        out.epsilon[i] = nan;
        out.degenerate = true;
        continue;
      }
      out.values[i] = map.analytic ? 1.0 + map.term2[i] / map.term1[i] : map.g2_raw[i] / denom;
      out.epsilon[i] = map.epsilon(r, c);
    }
  }
  return out;
}

/// Background-free correlation <I1 I2> - <I1><I2> (the interference term alone).
struct FluctuationMap {
  std::vector<double> covariance;
  /// covariance / (<I1><I2>) = g2 - 1.
  NormalizedMap normalized;
};

inline FluctuationMap fluctuation_correlation(const CorrelationMap& map) {
  if (!map.analytic && map.n_accumulated < 2) {
    throw DomainError("fluctuation_correlation: need at least two realizations");
  }
  FluctuationMap out;
  out.covariance.resize(map.rows() * map.cols());
  out.normalized = siegert_normalize(map);
  for (std::size_t r = 0; r < map.rows(); ++r) {
    for (std::size_t c = 0; c < map.cols(); ++c) {
      const std::size_t i = map.at(r, c);
      out.covariance[i] =
          map.analytic ? map.term2[i] : map.g2_raw[i] - map.i1_mean[r] * map.i2_mean[c];
      if (map.analytic) {
        out.normalized.values[i] = map.term1[i] > 0.0 ? map.term2[i] / map.term1[i]
                                                      : std::numeric_limits<double>::quiet_NaN();
      } else {
        out.normalized.values[i] -= 1.0;
      }
    }
  }
  return out;
}

}  // namespace ghost
