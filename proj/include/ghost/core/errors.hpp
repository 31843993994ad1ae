#pragma once

#include <stdexcept>
#include <string>

namespace ghost {

/// Precondition violated by an argument (bad geometry, aperture off-grid, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The grid cannot represent a requested propagation without aliasing.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ghost
