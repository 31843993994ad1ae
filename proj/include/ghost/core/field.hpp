#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ghost/core/grid.hpp"

namespace ghost {

using cplx = std::complex<double>;

/// Sampled complex amplitude of one field realization on a Grid1D.
class ComplexField {
 public:
  ComplexField(Grid1D grid, double wavelength)
      : grid_(grid), wavelength_(wavelength), amplitude_(grid.n()) {
    check_wavelength();
  }
  ComplexField(Grid1D grid, double wavelength, std::vector<cplx> amplitude)
      : grid_(grid), wavelength_(wavelength), amplitude_(std::move(amplitude)) {
    check_wavelength();
    if (amplitude_.size() != grid_.n()) {
      throw DomainError("ComplexField: amplitude length does not match grid");
    }
  }

  const Grid1D& grid() const { return grid_; }
  double wavelength() const { return wavelength_; }
  std::span<const cplx> amplitude() const { return amplitude_; }
  std::span<cplx> amplitude() { return amplitude_; }
  const cplx& operator[](std::size_t k) const { return amplitude_[k]; }
  cplx& operator[](std::size_t k) { return amplitude_[k]; }
  std::size_t size() const { return amplitude_.size(); }

  /// Sum |E|^2 dx.
  double power() const {
    double s = 0.0;
    for (const auto& a : amplitude_) s += std::norm(a);
    return s * grid_.dx();
  }

  std::vector<double> intensity() const {
    std::vector<double> out(amplitude_.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::norm(amplitude_[k]);
    return out;
  }

  static ComplexField uniform(Grid1D grid, double wavelength, cplx value = 1.0) {
    return ComplexField(grid, wavelength, std::vector<cplx>(grid.n(), value));
  }

 private:
  void check_wavelength() const {
    if (!(wavelength_ > 0.0)) throw DomainError("ComplexField: wavelength must be positive");
  }

  Grid1D grid_;
  double wavelength_;
  std::vector<cplx> amplitude_;
};

/// Relative L2 distance |a - b| / |b|. Grids must match.
inline double relative_l2(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) throw DomainError("relative_l2: size mismatch");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    num += std::norm(a[k] - b[k]);
    den += std::norm(b[k]);
  }
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

}  // namespace ghost
