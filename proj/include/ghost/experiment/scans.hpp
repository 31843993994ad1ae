#pragma once

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "ghost/correlation/analytic.hpp"
#include "ghost/correlation/monte_carlo.hpp"
#include "ghost/correlation/normalize.hpp"
#include "ghost/experiment/peaks.hpp"
#include "ghost/experiment/thin_lens.hpp"
#include "ghost/experiment/trace.hpp"

namespace ghost {

struct ScanOptions {
  Engine engine = Engine::analytic;
  TraceMode mode = TraceMode::raw;
  double scan_center = 0.0;
  double scan_half_width = 6e-3;
  /// Clear aperture diameter of the imaging lens; zero means unbounded.
  double lens_aperture = 10e-3;
  /// Relative thin-lens residual |1/s_o + 1/s_i - 1/f| * f tolerated before a scan is out of focus.
  double focus_tolerance = 1e-9;
  McOptions mc;
  /// Free-text object label copied into the trace metadata.
  std::string object_label;
};

/// D1 arm: free space to the object, bucket detector directly behind it.
inline ArmPath object_arm(const SetupGeometry& g, const TransmissionMask& object) {
  return ArmPath().propagate(g.arm1_length()).mask(object);
}

/// D2 arm: free space to the lens, (optional clear aperture), lens, free space to the scan plane.
inline ArmPath imaging_arm(const SetupGeometry& g, const Grid1D& grid, double lens_aperture) {
  ArmPath arm;
  arm.propagate(g.arm2_length());
  if (lens_aperture > 0.0) arm.mask(make_slit(grid, 0.0, lens_aperture));
  arm.lens(g.f).propagate(g.d_B_prime);
  return arm;
}

/// D2 arm for the sigma plane: free space over the same length as the object arm, no lens.
inline ArmPath sigma_arm(const SetupGeometry& g) { return ArmPath().propagate(g.arm1_length()); }

namespace detail {

inline std::string describe(const TransmissionMask& object) {
  std::ostringstream os;
  const auto f = object.features();
  os << f.size() << " feature(s):";
  for (const auto& i : f) os << " [" << i.lower << "," << i.upper << ")";
  return os.str();
}

inline ImageTrace correlate_scan(const SetupGeometry& geometry, const TransmissionMask& object,
                                 const EnsembleConfig& config, const ArmPath& scan_arm,
                                 double mapping, const ScanOptions& options) {
  geometry.validate();
  if (!(object.grid() == config.grid)) throw DomainError("scan: object grid differs from ensemble grid");
  if (object.feature_count() == 0) throw DomainError("scan: object has no transparent feature");

  EnsembleConfig cfg = config;
  cfg.geometry = geometry;
  const Interval scan{options.scan_center - options.scan_half_width,
                      options.scan_center + options.scan_half_width};
  const auto layout = DetectorLayout::bucket_detector(indices_in(cfg.grid, scan.lower, scan.upper));
  if (layout.cols() < 2) throw DomainError("scan: scan range holds fewer than two samples");

  const ArmPath arm1 = object_arm(geometry, object);
  const CorrelationMap map = options.engine == Engine::analytic
                                 ? g2_analytic(mode_decomposition(cfg, arm1, scan_arm), layout)
                                 : accumulate_mc(cfg, arm1, scan_arm, layout, options.mc);
  if (map.degenerate) throw DomainError("scan: zero mean intensity, correlation is degenerate");

  ImageTrace t;
  t.geometry = geometry;
  t.object = options.object_label.empty() ? describe(object) : options.object_label;
  t.n_realizations = options.engine == Engine::analytic ? 0 : cfg.n_realizations;
  t.mode = options.mode;
  t.engine = options.engine;
  t.mapping = mapping;
  t.x2 = map.x2_positions();
  const NormalizedMap g2 = options.mode == TraceMode::raw ? siegert_normalize(map)
                                                          : fluctuation_correlation(map).normalized;
  t.coincidence = g2.values;
  t.epsilon = g2.epsilon;
  const double mean_i2 =
      std::accumulate(map.i2_mean.begin(), map.i2_mean.end(), 0.0) / static_cast<double>(map.cols());
  t.singles1.assign(map.cols(), 1.0);
  t.singles2.resize(map.cols());
  for (std::size_t c = 0; c < map.cols(); ++c) t.singles2[c] = map.i2_mean[c] / mean_i2;
  t.image_window = image_window(object.support(), mapping, geometry.object_speckle_width(), scan);
  return t;
}

}  // namespace detail

/// Ghost image: bucket D1 behind the object, D2 scanned behind the lens.
inline ImageTrace ghost_image_scan(const SetupGeometry& geometry, const TransmissionMask& object,
                                   const EnsembleConfig& config, const ScanOptions& options = {}) {
  const ThinLensSolution lens = thin_lens_of(geometry);
  auto t = detail::correlate_scan(geometry, object, config,
                                  imaging_arm(geometry, config.grid, options.lens_aperture),
                                  -lens.magnification, options);
  t.thin_lens_residual = lens.residual;
  t.in_focus = std::abs(lens.residual * geometry.f) <= options.focus_tolerance;
  if (!t.in_focus) {
    std::ostringstream os;
    os << "geometry off the thin-lens condition: residual " << lens.residual
       << " 1/m (f_eff = " << lens.effective_focal_length() << " m)";
    t.warnings.push_back(os.str());
  }
  return t;
}

/// Pseudo-object: D2 scanned, without lens, at the object arm's path length (the sigma plane).
inline ImageTrace pseudo_object_scan(const SetupGeometry& geometry, const TransmissionMask& object,
                                     const EnsembleConfig& config, const ScanOptions& options = {}) {
  return detail::correlate_scan(geometry, object, config, sigma_arm(geometry), 1.0, options);
}

struct DefocusPoint {
  double delta = 0.0;
  double visibility = 0.0;
  double peak_width = 0.0;
  ImageTrace trace;
};

/// Repeats ghost_image_scan with d_B' + delta for each delta.
inline std::vector<DefocusPoint> defocus_sweep(const SetupGeometry& geometry,
                                               const TransmissionMask& object,
                                               const EnsembleConfig& config,
                                               const std::vector<double>& deltas,
                                               const ScanOptions& options = {}) {
  std::vector<DefocusPoint> out;
  for (double d : deltas) {
    SetupGeometry g = geometry;
    g.d_B_prime += d;
    if (!(g.d_B_prime > 0.0)) throw DomainError("defocus_sweep: d_B' + delta must stay positive");
    DefocusPoint p;
    p.delta = d;
    p.trace = ghost_image_scan(g, object, config, options);
    p.visibility = visibility(p.trace);
    const auto& v = p.trace.coincidence;
    const auto top = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    p.peak_width = peak_fwhm(p.trace.x2, v, top);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace ghost
