#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ghost/ghost.hpp"
#include "ghost/io/config.hpp"
#include "ghost/io/export.hpp"
#include "ghost/version.hpp"

namespace ghost::io {

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"fig3-point", "fig4-doubleslit", "sigma-plane", "defocus",
                                              "siegert-baseline"};
  return names;
}

struct OutputFile {
  std::string name;
  std::string sha256;
};

/// Record of one scenario run. `text()` is the manifest file; wall time is kept out of it (see
/// timing.txt) so the manifest is reproducible byte for byte.
struct RunManifest {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> entries;
  std::vector<OutputFile> outputs;
  std::vector<std::string> warnings;
  std::vector<std::string> summary;
  double wall_time_s = 0.0;

  std::string text() const {
    std::string out = "# ghost run manifest\n";
    for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
    for (const auto& w : warnings) out += "warning = " + w + "\n";
    for (const auto& o : outputs) out += "output." + o.name + " = sha256:" + o.sha256 + "\n";
    return out;
  }
};

/// Knobs that must not change any output byte.
struct RunOptions {
  unsigned workers = 0;
};

namespace detail {

inline std::string format_count(std::size_t v) { return std::to_string(v); }

/// Single propagation segments and the widest aperture the scenario places on the grid.
inline SamplingReport scenario_sampling(const RunConfig& cfg, const SetupGeometry& g, const Grid1D& grid,
                                        const std::string& name) {
  double z = std::max({g.arm1_length(), g.arm2_length(), g.d_B_prime});
  if (name == "defocus") z = std::max(z, g.d_B_prime + cfg.defocus_range);
  double extent = std::max(cfg.lens_aperture, g.source_diameter);
  if (name == "fig3-point") {
    for (double s : cfg.pinhole_shifts) extent = std::max(extent, 2.0 * std::abs(s) + cfg.pinhole_diameter);
  } else if (name == "fig4-doubleslit" || name == "defocus") {
    extent = std::max(extent, cfg.slit_separation + cfg.slit_width);
  } else if (name == "sigma-plane") {
    extent = std::max(extent, 2.0 * std::abs(cfg.sigma_shift) + cfg.pinhole_diameter);
  } else if (name == "siegert-baseline") {
    extent = std::max(extent, 2.0 * cfg.siegert_half_width);
  }
  std::optional<LensSampling> lens;
  if (name != "sigma-plane" && name != "siegert-baseline") lens = LensSampling{g.f, cfg.lens_aperture};
  return validate_sampling(grid, g.wavelength, z, extent, lens);
}

inline double argmax_x(const ImageTrace& t) {
  const auto it = std::max_element(t.coincidence.begin(), t.coincidence.end());
  return t.x2[static_cast<std::size_t>(it - t.coincidence.begin())];
}

}  // namespace detail

/// Runs a named scenario and writes its outputs, summary.txt, manifest.txt and timing.txt into
/// out_dir. Throws ConfigError (unknown name), SamplingError or IoError.
inline RunManifest run_scenario(const std::string& name, const RunConfig& cfg, const std::string& out_dir,
                                RunOptions run = {}) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw ConfigError("scenario", 0, "unknown scenario '" + name + "'; valid names: " + list);
  }
  const auto t0 = std::chrono::steady_clock::now();

  const SetupGeometry geometry = cfg.focus == FocusMode::solve ? focused(cfg.geometry) : cfg.geometry;
  const ThinLensSolution lens = thin_lens_of(geometry);
  const Grid1D grid(cfg.grid_n, cfg.grid_dx);
  const SamplingReport sampling = detail::scenario_sampling(cfg, geometry, grid, name);
  if (!sampling.ok) throw SamplingError(sampling.summary());

  EnsembleConfig ens;
  ens.n_realizations = cfg.realizations;
  ens.seed = cfg.seed;
  ens.geometry = geometry;
  ens.grid = grid;
  const auto support = source_support(ens);

  ScanOptions opt;
  opt.engine = cfg.engine;
  opt.mode = cfg.trace_mode;
  opt.scan_half_width = cfg.scan_half_width;
  opt.lens_aperture = cfg.lens_aperture;
  opt.mc.workers = run.workers;

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

  RunManifest m;
  m.scenario = name;
  m.entries.emplace_back("version", kVersion);
  m.entries.emplace_back("scenario", name);
  for (auto& e : config_entries(cfg)) m.entries.push_back(std::move(e));
  m.entries.emplace_back("derived.s_o", format_length(lens.s_o));
  m.entries.emplace_back("derived.s_i", format_length(lens.s_i));
  m.entries.emplace_back("derived.magnification", format_number(lens.magnification));
  m.entries.emplace_back("derived.thin_lens_residual_per_m", format_number(lens.residual));
  m.entries.emplace_back("derived.source_modes", std::to_string(support.second - support.first));
  m.entries.emplace_back("derived.chirp_margin", format_number(sampling.chirp_margin));
  m.entries.emplace_back("derived.guard_margin", format_number(sampling.guard_margin));
  if (sampling.lens_margin) m.entries.emplace_back("derived.lens_margin", format_number(*sampling.lens_margin));

  const std::filesystem::path dir(out_dir);
  auto emit = [&](const std::string& file, const std::string& bytes) {
    write_file((dir / file).string(), bytes);
    m.outputs.push_back({file, sha256_hex(bytes)});
  };
  auto emit_image = [&](const std::string& file, const std::vector<double>& v, std::size_t rows,
                        std::size_t cols) {
    ImageScaling s;
    emit(file, pgm_bytes(v, rows, cols, &s));
    m.entries.emplace_back("image." + file + ".min", format_number(s.min));
    m.entries.emplace_back("image." + file + ".max", format_number(s.max));
    if (s.constant) m.warnings.push_back(file + ": constant field, image written as all zeros");
  };
  auto note = [&](const ImageTrace& t) {
    for (const auto& w : t.warnings) {
      if (std::find(m.warnings.begin(), m.warnings.end(), w) == m.warnings.end()) m.warnings.push_back(w);
    }
  };
  auto line = [&](std::vector<std::pair<std::string, std::string>> kv) {
    std::string s;
    for (const auto& [k, v] : kv) s += (s.empty() ? "" : " ") + k + "=" + v;
    m.summary.push_back(s);
  };

  if (name == "fig3-point") {
    std::vector<double> image;
    std::size_t cols = 0;
    for (std::size_t i = 0; i < cfg.pinhole_shifts.size(); ++i) {
      const double shift = cfg.pinhole_shifts[i];
      const auto t = ghost_image_scan(geometry, make_pinhole(grid, shift, cfg.pinhole_diameter), ens, opt);
      note(t);
      emit("point_" + std::to_string(i) + ".csv", trace_csv(t));
      image.insert(image.end(), t.coincidence.begin(), t.coincidence.end());
      cols = t.size();
      line({{"point", std::to_string(i)},
            {"shift_m", format_number(shift)},
            {"expected_peak_m", format_number(lens.image_of(shift))},
            {"peak_m", format_number(detail::argmax_x(t))},
            {"visibility", format_number(visibility(t))}});
    }
    emit_image("point_map.pgm", image, cfg.pinhole_shifts.size(), cols);
  } else if (name == "fig4-doubleslit" || name == "defocus") {
    const auto object = make_double_slit(grid, cfg.slit_separation, cfg.slit_width);
    if (name == "fig4-doubleslit") {
      const auto t = ghost_image_scan(geometry, object, ens, opt);
      note(t);
      emit("doubleslit.csv", trace_csv(t));
      emit_image("doubleslit.pgm", t.coincidence, 1, t.size());
      std::string peaks;
      const auto idx = find_peaks(t.coincidence);
      for (auto k : idx) peaks += (peaks.empty() ? "" : ";") + format_number(t.x2[k]);
      line({{"peaks_m", peaks.empty() ? "none" : peaks},
            {"separation_m", idx.size() == 2 ? format_number(t.x2[idx[1]] - t.x2[idx[0]]) : "n/a"},
            {"expected_separation_m", format_number(lens.magnification * cfg.slit_separation)}});
      line({{"visibility", format_number(visibility(t))},
            {"visibility_error", format_number(visibility_error(t, t.image_window))},
            {"predicted_visibility", format_number(predicted_visibility(2))},
            {"reference_measured_visibility", "0.12"}});
    } else {
      const auto steps = static_cast<long>(std::llround(cfg.defocus_range / cfg.defocus_step));
      std::vector<double> deltas;
      for (long k = -steps; k <= steps; ++k) deltas.push_back(static_cast<double>(k) * cfg.defocus_step);
      const auto sweep = defocus_sweep(geometry, object, ens, deltas, opt);
      std::string csv = "delta_m,visibility,peak_width_m\n";
      std::size_t best = 0;
      for (std::size_t i = 0; i < sweep.size(); ++i) {
        csv += format_number(sweep[i].delta) + "," + format_number(sweep[i].visibility) + "," +
               format_number(sweep[i].peak_width) + "\n";
        if (sweep[i].visibility > sweep[best].visibility) best = i;
      }
      emit("defocus.csv", csv);
      line({{"points", std::to_string(sweep.size())},
            {"argmax_delta_m", format_number(sweep[best].delta)},
            {"max_visibility", format_number(sweep[best].visibility)}});
    }
  } else if (name == "sigma-plane") {
    const auto t = pseudo_object_scan(geometry, make_pinhole(grid, cfg.sigma_shift, cfg.pinhole_diameter), ens, opt);
    note(t);
    emit("sigma.csv", trace_csv(t));
    line({{"shift_m", format_number(cfg.sigma_shift)},
          {"expected_peak_m", format_number(cfg.sigma_shift)},
          {"peak_m", format_number(detail::argmax_x(t))},
          {"visibility", format_number(visibility(t))}});
  } else {
    // Identical free-space arms read point by point; always reported as raw g2.
    const auto idx = indices_in(grid, -cfg.siegert_half_width, cfg.siegert_half_width);
    const auto layout = DetectorLayout::resolved(idx, idx);
    const ArmPath arm = sigma_arm(geometry);
    const CorrelationMap map = cfg.engine == Engine::analytic
                                   ? g2_analytic(mode_decomposition(ens, arm, arm), layout)
                                   : accumulate_mc(ens, arm, arm, layout, opt.mc);
    if (map.degenerate) throw DomainError("siegert-baseline: zero mean intensity");
    const NormalizedMap g2 = siegert_normalize(map);
    emit_image("siegert_map.pgm", g2.values, g2.rows, g2.cols);
    ImageTrace diag;
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      m1 += map.i1_mean[i];
      m2 += map.i2_mean[i];
    }
    m1 /= static_cast<double>(idx.size());
    m2 /= static_cast<double>(idx.size());
    double mean_diag = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      diag.x2.push_back(grid.coordinate(idx[i]));
      diag.coincidence.push_back(g2(i, i));
      diag.singles1.push_back(map.i1_mean[i] / m1);
      diag.singles2.push_back(map.i2_mean[i] / m2);
      mean_diag += g2(i, i);
    }
    emit("siegert_diagonal.csv", trace_csv(diag));
    const auto [lo, hi] = std::minmax_element(g2.values.begin(), g2.values.end());
    line({{"mean_diagonal_g2", format_number(mean_diag / static_cast<double>(idx.size()))},
          {"min_g2", format_number(*lo)},
          {"max_g2", format_number(*hi)}});
  }

  std::string summary;
  for (const auto& s : m.summary) summary += s + "\n";
  emit("summary.txt", summary);
  write_file((dir / "manifest.txt").string(), m.text());
  m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_file((dir / "timing.txt").string(), "wall_time_s = " + format_number(m.wall_time_s) + "\n");
  return m;
}

}  // namespace ghost::io
