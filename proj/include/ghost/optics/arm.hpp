#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ghost/optics/propagation.hpp"

namespace ghost {

struct Propagate {
  double distance;
};
struct Lens {
  double focal_length;
};
struct Mask {
  TransmissionMask mask;
};

using ArmElement = std::variant<Propagate, Lens, Mask>;

/// Ordered optical elements from the source plane to one detector plane.
class ArmPath {
 public:
  ArmPath() = default;

  ArmPath& propagate(double distance) {
    if (!(distance >= 0.0)) throw DomainError("ArmPath: propagation distance must be >= 0");
    elements_.emplace_back(Propagate{distance});
    return *this;
  }
  ArmPath& lens(double focal_length) {
    if (focal_length == 0.0) throw DomainError("ArmPath: focal length must be nonzero");
    elements_.emplace_back(Lens{focal_length});
    return *this;
  }
  ArmPath& mask(TransmissionMask m) {
    elements_.emplace_back(Mask{std::move(m)});
    return *this;
  }

  const std::vector<ArmElement>& elements() const { return elements_; }
  bool empty() const { return elements_.empty(); }

  /// Sum of all propagation distances.
  double total_distance() const {
    double z = 0.0;
    for (const auto& e : elements_) {
      if (const auto* p = std::get_if<Propagate>(&e)) z += p->distance;
    }
    return z;
  }

 private:
  std::vector<ArmElement> elements_;
};

/// An ArmPath with every transfer function and lens phase precomputed for one grid and wavelength.
/// Immutable after construction; concurrent `apply` calls on distinct buffers are safe.
class PreparedArm {
 public:
  PreparedArm(const ArmPath& path, const Grid1D& grid, double wavelength,
              SamplingPolicy policy = SamplingPolicy::refuse)
      : grid_(grid), wavelength_(wavelength) {
    for (const auto& e : path.elements()) {
      if (const auto* p = std::get_if<Propagate>(&e)) {
        if (p->distance == 0.0) continue;
        const auto report = validate_sampling(grid, wavelength, p->distance);
        if (!report.ok && policy == SamplingPolicy::refuse) {
          throw SamplingError("run_arm: " + report.summary());
        }
        // Consecutive propagations compose exactly; fold them into one transfer function.
        if (!stages_.empty() && stages_.back().kind == Stage::transfer) {
          const auto h = fresnel_transfer_function(grid, wavelength, p->distance);
          for (std::size_t j = 0; j < h.size(); ++j) stages_.back().values[j] *= h[j];
        } else {
          stages_.push_back({Stage::transfer, fresnel_transfer_function(grid, wavelength, p->distance)});
        }
      } else if (const auto* l = std::get_if<Lens>(&e)) {
        push_pointwise(lens_phase(grid, wavelength, l->focal_length));
      } else {
        const auto& m = std::get<Mask>(e).mask;
        if (!(m.grid() == grid)) throw DomainError("run_arm: mask grid mismatch");
        push_pointwise({m.transmittance().begin(), m.transmittance().end()});
      }
    }
  }

  const Grid1D& grid() const { return grid_; }
  double wavelength() const { return wavelength_; }

  /// Runs the arm in place on a buffer of grid().n() samples.
  void apply(std::span<cplx> field) const {
    for (const auto& s : stages_) {
      if (s.kind == Stage::transfer) {
        apply_transfer(field, s.values);
      } else {
        for (std::size_t k = 0; k < field.size(); ++k) field[k] *= s.values[k];
      }
    }
  }

  ComplexField operator()(ComplexField field) const {
    if (!(field.grid() == grid_)) throw DomainError("run_arm: field grid mismatch");
    apply(field.amplitude());
    return field;
  }

 private:
  struct Stage {
    enum Kind { transfer, pointwise } kind;
    std::vector<cplx> values;
  };

  void push_pointwise(std::vector<cplx> v) {
    if (!stages_.empty() && stages_.back().kind == Stage::pointwise) {
      for (std::size_t k = 0; k < v.size(); ++k) stages_.back().values[k] *= v[k];
    } else {
      stages_.push_back({Stage::pointwise, std::move(v)});
    }
  }

  Grid1D grid_;
  double wavelength_;
  std::vector<Stage> stages_;
};

/// Applies every element of `path` to `field` in order.
inline ComplexField run_arm(ComplexField field, const ArmPath& path,
                            SamplingPolicy policy = SamplingPolicy::refuse) {
  if (path.empty()) return field;
  const PreparedArm arm(path, field.grid(), field.wavelength(), policy);
  return arm(std::move(field));
}

}  // namespace ghost
