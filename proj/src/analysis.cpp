#include "mid/analysis.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mid/errors.hpp"

namespace mid {

namespace {

constexpr double kSeriesCutoff = 1.0;

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(what) + " must be > 0");
  }
}

// -gamma - ln x - sum_{n>=1} (-x)^n / (n n!)
double e1_series(double x) {
  double sum = 0.0;
  double term = 1.0;  // (-x)^n / n!
  for (int n = 1; n < 200; ++n) {
    term *= -x / n;
    const double contribution = term / n;
    sum += contribution;
    if (std::abs(contribution) < 1e-18 * std::abs(sum)) {
      break;
    }
  }
  return -std::numbers::egamma - std::log(x) - sum;
}

// exp(x) E1(x) by the modified Lentz evaluation of
// 1/(x+1- 1/(x+3- 4/(x+5- ...))).
double e1_scaled_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) {
      break;
    }
  }
  return h;
}

}  // namespace

double exponential_integral_e1(double x) {
  require_positive(x, "exponential integral argument");
  if (x <= kSeriesCutoff) {
    return e1_series(x);
  }
  return std::exp(-x) * e1_scaled_continued_fraction(x);
}

double scaled_exponential_integral_e1(double x) {
  require_positive(x, "exponential integral argument");
  if (x <= kSeriesCutoff) {
    return std::exp(x) * e1_series(x);
  }
  return e1_scaled_continued_fraction(x);
}

double expected_capped_power(double max_power, double gamma_limit) {
  require_positive(max_power, "transmit power P");
  require_positive(gamma_limit, "interference limit Gamma");
  const double ratio = gamma_limit / max_power;
  // P(g <= Gamma/P) P + Gamma E1(Gamma/P)
  return -max_power * std::expm1(-ratio) + gamma_limit * exponential_integral_e1(ratio);
}

double expected_interference_attenuation(double pr_power) {
  require_positive(pr_power, "PR transmit power Q");
  const double x = 1.0 / pr_power;
  return scaled_exponential_integral_e1(x) * x;
}

double BoundConstants::alpha_for(const NetworkKind& kind) const {
  switch (kind.topology()) {
    case Topology::CMac:
      return alpha_mac;
    case Topology::CBc:
      return alpha_bc;
    case Topology::CPac:
      return alpha_pac;
    case Topology::Reference:
      break;
  }
  return 1.0;
}

double BoundConstants::kappa_for(const NetworkKind& kind) const {
  switch (kind.topology()) {
    case Topology::CMac:
      return kappa_mac;
    case Topology::CBc:
      return kappa_bc;
    case Topology::CPac:
      return kappa_pac;
    case Topology::Reference:
      break;
  }
  return kappa_0;
}

BoundConstants bound_constants(const NetworkConfig& config) {
  config.validate();
  if (!config.symmetric()) {
    throw UnsupportedConfigError("bound constants need a symmetric power configuration");
  }
  if (!config.all_rayleigh()) {
    throw UnsupportedConfigError("bound constants are only available for unit-power Rayleigh fading");
  }
  const double p = config.user_power(0);
  const double mean_h = config.dist_h.mean();
  const double capped = expected_capped_power(p, config.interference_limit);
  const double attenuation = expected_interference_attenuation(config.pr_power);

  BoundConstants out;
  out.alpha_mac = p / capped;
  out.alpha_bc = 1.0 / attenuation;
  out.alpha_pac = out.alpha_mac * out.alpha_bc;
  out.kappa_mac = 1.0 / (mean_h * capped);
  out.kappa_bc = 1.0 / (mean_h * attenuation);
  out.kappa_pac = 1.0 / (mean_h * capped * attenuation);
  out.kappa_0 = 1.0 / mean_h;
  return out;
}

double reference_mdg_exact(std::size_t users) {
  if (users == 0) {
    throw DomainError("harmonic number needs K >= 1");
  }
  if (users > 10'000'000) {
    const double k = static_cast<double>(users);
    const double k2 = k * k;
    return std::log(k) + std::numbers::egamma + 1.0 / (2.0 * k) - 1.0 / (12.0 * k2) + 1.0 / (120.0 * k2 * k2);
  }
  // smallest terms first
  double sum = 0.0;
  for (std::size_t i = users; i >= 1; --i) {
    sum += 1.0 / static_cast<double>(i);
  }
  return sum;
}

double scaling_function(std::size_t users) {
  if (users < 3) {
    throw DomainError("log2(ln K) needs K >= 3");
  }
  return std::log2(std::log(static_cast<double>(users)));
}

}  // namespace mid
