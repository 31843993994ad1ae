#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghost/experiment/trace.hpp"
#include "ghost/io/config.hpp"

namespace ghost::io {

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kTraceHeader = "x2_m,coincidence,singles1,singles2";

/// One row per scan point, `%.17g` values, LF line endings.
inline std::string trace_csv(const ImageTrace& t) {
  std::string out = std::string(kTraceHeader) + "\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += format_number(t.x2[i]) + "," + format_number(t.coincidence[i]) + "," +
           format_number(t.singles1[i]) + "," + format_number(t.singles2[i]) + "\n";
  }
  return out;
}

/// Columns x2, coincidence, singles1 and singles2 from trace_csv text; metadata is not restored.
inline ImageTrace parse_trace_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) throw IoError("trace csv: missing or unexpected header");
  ImageTrace t;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double v[4];
    int k = 0;
    while (std::getline(row, cell, ',')) {
      if (k == 4) throw IoError("trace csv: too many columns on line " + std::to_string(line_no));
      try {
        std::size_t used = 0;
        v[k] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw IoError("trace csv: bad number '" + cell + "' on line " + std::to_string(line_no));
      }
      ++k;
    }
    if (k != 4) throw IoError("trace csv: expected 4 columns on line " + std::to_string(line_no));
    t.x2.push_back(v[0]);
    t.coincidence.push_back(v[1]);
    t.singles1.push_back(v[2]);
    t.singles2.push_back(v[3]);
  }
  return t;
}

/// Linear min->0, max->65535 mapping used for a PGM export.
struct ImageScaling {
  double min = 0.0;
  double max = 0.0;
  bool constant = false;
};

/// Binary 16-bit PGM (P5, maxval 65535, big-endian samples) of a row-major rows x cols array.
/// A constant array maps to all zeros and is flagged in the returned scaling.
inline std::string pgm_bytes(const std::vector<double>& values, std::size_t rows, std::size_t cols,
                             ImageScaling* scaling = nullptr) {
  if (rows * cols != values.size() || values.empty()) throw DomainError("pgm: shape does not match data");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  ImageScaling s{*lo_it, *hi_it, !(*hi_it > *lo_it)};
  std::string out = "P5\n" + std::to_string(cols) + " " + std::to_string(rows) + "\n65535\n";
  out.reserve(out.size() + 2 * values.size());
  for (double v : values) {
    std::uint16_t q = 0;
    if (!s.constant) q = static_cast<std::uint16_t>(std::lround((v - s.min) / (s.max - s.min) * 65535.0));
    out.push_back(static_cast<char>(q >> 8));
    out.push_back(static_cast<char>(q & 0xFF));
  }
  if (scaling) *scaling = s;
  return out;
}

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Lowercase hex SHA-256.
inline std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

}  // namespace ghost::io
