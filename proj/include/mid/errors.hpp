#pragma once

#include <stdexcept>
#include <string>

namespace mid {

/// Invalid network or estimator configuration (K = 0, nonpositive powers, n < 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inputs whose shapes do not fit together (state vs. network kind, empty SNR list).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A valid configuration that an operation does not support (asymmetric powers
/// for MDG quantities, non-Rayleigh fading for analytic constants).
class UnsupportedConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace mid
