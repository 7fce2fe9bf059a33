#pragma once

// Closed forms for unit-power Rayleigh fading: the exponential integral, the
// expectations behind the MDG constants, and the reference-network MDG.

#include <cstddef>

#include "mid/model.hpp"

namespace mid {

/// Constants of the MDG bounds and of the kappa form of the MDG.
struct BoundConstants {
  double alpha_mac = 1.0;
  double alpha_bc = 1.0;
  double alpha_pac = 1.0;
  double kappa_mac = 1.0;
  double kappa_bc = 1.0;
  double kappa_pac = 1.0;
  double kappa_0 = 1.0;

  /// Upper-bound factor for `kind` (1 for a reference network).
  double alpha_for(const NetworkKind& kind) const;
  /// Normalizing constant of the max-expression for `kind`.
  double kappa_for(const NetworkKind& kind) const;
};

/// E1(x) = integral from x to infinity of exp(-t)/t dt, for x > 0.
///
/// Power series below x = 1, Lentz continued fraction above; relative error
/// under 1e-13 on (0, 700]. Throws DomainError for x <= 0 or NaN.
double exponential_integral_e1(double x);

/// exp(x) * E1(x), finite for large x where E1 itself underflows.
double scaled_exponential_integral_e1(double x);

/// E[min(P, Gamma / g)] for g ~ Exp(1): P (1 - exp(-Gamma/P)) + Gamma E1(Gamma/P).
double expected_capped_power(double max_power, double gamma_limit);

/// E[1 / (1 + Q e)] for e ~ Exp(1): exp(1/Q) E1(1/Q) / Q.
double expected_interference_attenuation(double pr_power);

/// Requires a symmetric, all-Rayleigh configuration; otherwise throws
/// UnsupportedConfigError. Uses the symmetric per-user power P for the
/// MAC/PAC constants.
BoundConstants bound_constants(const NetworkConfig& config);

/// Harmonic number H_K, the exact mean of the largest of K unit exponentials
/// and hence the MDG of the reference network. Throws DomainError for K = 0.
double reference_mdg_exact(std::size_t users);

/// log2(ln K), the growth scale of the ergodic throughput. K >= 3.
double scaling_function(std::size_t users);

}  // namespace mid
