#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ghost/core/geometry.hpp"
#include "ghost/core/mask.hpp"

namespace ghost {

enum class Engine { mc, analytic };
enum class TraceMode { raw, fluctuation };

inline const char* to_string(Engine e) { return e == Engine::mc ? "mc" : "analytic"; }
inline const char* to_string(TraceMode m) { return m == TraceMode::raw ? "raw" : "fluctuation"; }

/// Coincidence and singles versus D2 position.
///
/// `coincidence` is g2 = <I1 I2>/(<I1><I2>) in raw mode and g2 - 1 in fluctuation mode; singles are
/// normalized to unit mean over the scan; `epsilon` is the per-point Monte Carlo error bound of
/// `coincidence` (zero for the analytic engine).
struct ImageTrace {
  std::vector<double> x2;
  std::vector<double> coincidence;
  std::vector<double> singles1;
  std::vector<double> singles2;
  std::vector<double> epsilon;

  SetupGeometry geometry;
  std::string object;
  std::size_t n_realizations = 0;
  TraceMode mode = TraceMode::raw;
  Engine engine = Engine::analytic;
  /// Object-to-scan-plane coordinate map (-M for the ghost image, +1 on the sigma plane).
  double mapping = 1.0;
  /// Default visibility window: mapped object support plus a speckle-width guard band.
  Interval image_window;
  double thin_lens_residual = 0.0;
  bool in_focus = true;
  std::vector<std::string> warnings;

  std::size_t size() const { return x2.size(); }
};

inline std::vector<std::size_t> window_indices(const ImageTrace& trace, Interval window) {
  std::vector<std::size_t> idx;
  const double tol = 1e-12;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace.x2[i] >= window.lower - tol && trace.x2[i] <= window.upper + tol) idx.push_back(i);
  }
  return idx;
}

/// (max - min)/(max + min) of the coincidence trace inside `window`. A negative minimum (Monte Carlo
/// noise on a background-free trace) is clamped to zero so the result stays in [0, 1].
inline double visibility(const ImageTrace& trace, Interval window) {
  const auto idx = window_indices(trace, window);
  if (idx.size() < 2) throw DomainError("visibility: window holds fewer than two scan points");
  double hi = -INFINITY;
  double lo = INFINITY;
  for (auto i : idx) {
    hi = std::max(hi, trace.coincidence[i]);
    lo = std::min(lo, trace.coincidence[i]);
  }
  lo = std::max(lo, 0.0);
  if (!(hi + lo > 0.0)) return 0.0;
  return (hi - lo) / (hi + lo);
}

inline double visibility(const ImageTrace& trace) { return visibility(trace, trace.image_window); }

/// First-order error of visibility() from the per-point epsilon at the max and min samples.
inline double visibility_error(const ImageTrace& trace, Interval window) {
  const auto idx = window_indices(trace, window);
  if (idx.size() < 2) throw DomainError("visibility_error: window holds fewer than two scan points");
  std::size_t imax = idx.front();
  std::size_t imin = idx.front();
  for (auto i : idx) {
    if (trace.coincidence[i] > trace.coincidence[imax]) imax = i;
    if (trace.coincidence[i] < trace.coincidence[imin]) imin = i;
  }
  const double hi = trace.coincidence[imax];
  const double lo = std::max(0.0, trace.coincidence[imin]);
  const double s = (hi + lo) * (hi + lo);
  if (!(s > 0.0)) return 0.0;
  const double dv_dhi = 2.0 * lo / s;
  const double dv_dlo = 2.0 * hi / s;
  return std::hypot(dv_dhi * trace.epsilon[imax], dv_dlo * trace.epsilon[imin]);
}

/// Ideal bucket ghost-image visibility for N equal, resolved transparent features: peak N + 1 over
/// background N.
inline double predicted_visibility(std::size_t n_features) {
  if (n_features == 0) throw DomainError("predicted_visibility: need at least one feature");
  return 1.0 / (2.0 * static_cast<double>(n_features) + 1.0);
}

/// Image-plane window for visibility: the object support mapped through `mapping`, padded on each
/// side by max(25% of its span, 3 image-plane speckle widths), then clipped to the scan range.
inline Interval image_window(Interval object_support, double mapping, double object_speckle_width,
                             Interval scan_range) {
  const double a = mapping * object_support.lower;
  const double b = mapping * object_support.upper;
  double lo = std::min(a, b);
  double hi = std::max(a, b);
  const double pad = std::max(0.25 * (hi - lo), 3.0 * std::abs(mapping) * object_speckle_width);
  lo = std::max(lo - pad, scan_range.lower);
  hi = std::min(hi + pad, scan_range.upper);
  return {lo, hi};
}

}  // namespace ghost
