#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghost/core/geometry.hpp"
#include "ghost/experiment/trace.hpp"

namespace ghost::io {

/// Malformed configuration; `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class FocusMode { solve, as_given };

/// Everything that can influence a scenario's outputs.
struct RunConfig {
  SetupGeometry geometry;
  std::size_t grid_n = 16384;
  double grid_dx = 5e-6;
  double lens_aperture = 10e-3;
  double scan_half_width = 6e-3;
  FocusMode focus = FocusMode::solve;
  Engine engine = Engine::analytic;
  TraceMode trace_mode = TraceMode::raw;
  std::uint64_t seed = 1;
  std::size_t realizations = 10000;
  double pinhole_diameter = 60e-6;
  std::vector<double> pinhole_shifts{-2e-3, 0.0, 2e-3};
  double slit_width = 0.2e-3;
  double slit_separation = 1e-3;
  double sigma_shift = 1e-3;
  double defocus_range = 50e-3;
  double defocus_step = 10e-3;
  double siegert_half_width = 1e-3;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// "88mm" -> 0.088. Units: m, mm, um (or µm), nm.
inline std::optional<double> parse_length(const std::string& text) {
  static const std::vector<std::pair<std::string, double>> units{
      {"nm", 1e-9}, {"um", 1e-6}, {"\xC2\xB5m", 1e-6}, {"mm", 1e-3}, {"m", 1.0}};
  const std::string s = trim(text);
  for (const auto& [suffix, scale] : units) {
    if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
      const std::string num = trim(s.substr(0, s.size() - suffix.size()));
      std::size_t used = 0;
      try {
        const double v = std::stod(num, &used);
        if (used != num.size()) return std::nullopt;
        return v * scale;
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

inline std::optional<std::uint64_t> parse_count(const std::string& text) {
  const std::string s = trim(text);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Parses flat `key = value` text. `#` starts a comment; lengths carry a unit suffix
/// (`d_A = 88mm`, `wavelength = 633nm`); unknown or repeated keys are errors.
inline RunConfig parse_config(const std::string& text, const std::string& source = "<config>") {
  RunConfig c;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(source, line_no, "expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(source, line_no, "expected 'key = value'");
    if (auto [it, fresh] = seen.emplace(key, line_no); !fresh) {
      throw ConfigError(source, line_no,
                        "duplicate key '" + key + "' (first set on line " + std::to_string(it->second) + ")");
    }

    auto length = [&](bool allow_zero = false) {
      auto v = detail::parse_length(value);
      if (!v) throw ConfigError(source, line_no, "'" + key + "' needs a length with unit (m, mm, um, nm), got '" + value + "'");
      if (!(*v > 0.0) && !(allow_zero && *v == 0.0)) {
        throw ConfigError(source, line_no, "'" + key + "' must be positive");
      }
      return *v;
    };
    auto count = [&] {
      auto v = detail::parse_count(value);
      if (!v) throw ConfigError(source, line_no, "'" + key + "' needs a non-negative integer, got '" + value + "'");
      return *v;
    };

    if (key == "a") c.geometry.a = length();
    else if (key == "d_A") c.geometry.d_A = length();
    else if (key == "d_B") c.geometry.d_B = length();
    else if (key == "d_B_prime") c.geometry.d_B_prime = length();
    else if (key == "f") c.geometry.f = length();
    else if (key == "wavelength") c.geometry.wavelength = length();
    else if (key == "source_diameter") c.geometry.source_diameter = length();
    else if (key == "grid_n") c.grid_n = count();
    else if (key == "grid_dx") c.grid_dx = length();
    else if (key == "lens_aperture") c.lens_aperture = value == "none" ? 0.0 : length(true);
    else if (key == "scan_half_width") c.scan_half_width = length();
    else if (key == "focus") {
      if (value == "solve") c.focus = FocusMode::solve;
      else if (value == "as_given") c.focus = FocusMode::as_given;
      else throw ConfigError(source, line_no, "focus must be 'solve' or 'as_given'");
    } else if (key == "engine") {
      if (value == "mc") c.engine = Engine::mc;
      else if (value == "analytic") c.engine = Engine::analytic;
      else throw ConfigError(source, line_no, "engine must be 'mc' or 'analytic'");
    } else if (key == "trace_mode") {
      if (value == "raw") c.trace_mode = TraceMode::raw;
      else if (value == "fluctuation") c.trace_mode = TraceMode::fluctuation;
      else throw ConfigError(source, line_no, "trace_mode must be 'raw' or 'fluctuation'");
    } else if (key == "seed") c.seed = count();
    else if (key == "realizations") {
      c.realizations = count();
      if (c.realizations < 1) throw ConfigError(source, line_no, "realizations must be >= 1");
    } else if (key == "pinhole_diameter") c.pinhole_diameter = length();
    else if (key == "pinhole_shifts") {
      c.pinhole_shifts.clear();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        auto v = detail::parse_length(item);
        if (!v) throw ConfigError(source, line_no, "pinhole_shifts: bad length '" + detail::trim(item) + "'");
        c.pinhole_shifts.push_back(*v);
      }
    } else if (key == "slit_width") c.slit_width = length();
    else if (key == "slit_separation") c.slit_separation = length();
    else if (key == "sigma_shift") {
      auto v = detail::parse_length(value);
      if (!v) throw ConfigError(source, line_no, "'sigma_shift' needs a length with unit");
      c.sigma_shift = *v;
    } else if (key == "defocus_range") c.defocus_range = length();
    else if (key == "defocus_step") c.defocus_step = length();
    else if (key == "siegert_half_width") c.siegert_half_width = length();
    else throw ConfigError(source, line_no, "unknown key '" + key + "'");
  }
  try {
    c.geometry.validate();
    Grid1D check(c.grid_n, c.grid_dx);
    (void)check;
  } catch (const DomainError& e) {
    throw ConfigError(source, 0, e.what());
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

/// Shortest decimal that round-trips (17 significant digits).
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string format_length(double v) { return format_number(v) + "m"; }

/// Config as ordered key/value pairs in the config file syntax (lengths in meters).
inline std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& c) {
  std::string shifts;
  for (std::size_t i = 0; i < c.pinhole_shifts.size(); ++i) {
    shifts += (i ? ", " : "") + format_length(c.pinhole_shifts[i]);
  }
  return {
      {"a", format_length(c.geometry.a)},
      {"d_A", format_length(c.geometry.d_A)},
      {"d_B", format_length(c.geometry.d_B)},
      {"d_B_prime", format_length(c.geometry.d_B_prime)},
      {"f", format_length(c.geometry.f)},
      {"wavelength", format_length(c.geometry.wavelength)},
      {"source_diameter", format_length(c.geometry.source_diameter)},
      {"grid_n", std::to_string(c.grid_n)},
      {"grid_dx", format_length(c.grid_dx)},
      {"lens_aperture", c.lens_aperture > 0.0 ? format_length(c.lens_aperture) : "none"},
      {"scan_half_width", format_length(c.scan_half_width)},
      {"focus", c.focus == FocusMode::solve ? "solve" : "as_given"},
      {"engine", to_string(c.engine)},
      {"trace_mode", to_string(c.trace_mode)},
      {"seed", std::to_string(c.seed)},
      {"realizations", std::to_string(c.realizations)},
      {"pinhole_diameter", format_length(c.pinhole_diameter)},
      {"pinhole_shifts", shifts},
      {"slit_width", format_length(c.slit_width)},
      {"slit_separation", format_length(c.slit_separation)},
      {"sigma_shift", format_length(c.sigma_shift)},
      {"defocus_range", format_length(c.defocus_range)},
      {"defocus_step", format_length(c.defocus_step)},
      {"siegert_half_width", format_length(c.siegert_half_width)},
  };
}

}  // namespace ghost::io
