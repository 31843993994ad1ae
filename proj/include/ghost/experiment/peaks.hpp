#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace ghost {

/// Height of a local maximum above the higher of its two bases (the lowest point between the peak
/// and the nearest higher sample, or the trace edge, on each side).
inline double prominence(std::span<const double> v, std::size_t i) {
  double left_min = v[i];
  for (std::size_t j = i; j-- > 0;) {
    if (v[j] > v[i]) break;
    left_min = std::min(left_min, v[j]);
  }
  double right_min = v[i];
  for (std::size_t j = i + 1; j < v.size(); ++j) {
    if (v[j] > v[i]) break;
    right_min = std::min(right_min, v[j]);
  }
  return v[i] - std::max(left_min, right_min);
}

/// Local maxima whose prominence is at least `min_fraction` of the full range max - min.
/// Flat tops report their first sample. Returned in index order.
inline std::vector<std::size_t> find_peaks(std::span<const double> v, double min_fraction = 0.25) {
  std::vector<std::size_t> out;
  if (v.size() < 3) return out;
  const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
  const double threshold = min_fraction * (*mx - *mn);
  if (!(threshold > 0.0)) return out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    if (j + 1 < v.size() && v[j + 1] < v[i] && prominence(v, i) >= threshold) out.push_back(i);
    i = j;
  }
  return out;
}

/// Full width at half height of the peak at `i`, measured above the trace minimum, with linear
/// interpolation between samples. Returns NaN if the trace never drops below half height.
inline double peak_fwhm(std::span<const double> x, std::span<const double> v, std::size_t i) {
  const double base = *std::min_element(v.begin(), v.end());
  const double half = base + 0.5 * (v[i] - base);
  std::size_t l = i;
  while (l > 0 && v[l] > half) --l;
  std::size_t r = i;
  while (r + 1 < v.size() && v[r] > half) ++r;
  if (v[l] > half || v[r] > half) return std::nan("");
  auto cross = [&](std::size_t a, std::size_t b) {
    return x[a] + (half - v[a]) * (x[b] - x[a]) / (v[b] - v[a]);
  };
  return cross(r - 1, r) - cross(l, l + 1);
}

}  // namespace ghost
