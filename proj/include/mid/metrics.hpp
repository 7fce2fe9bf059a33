#pragma once

// Monte Carlo estimators of ergodic throughput, multiuser diversity gain and
// the asymptotic throughput scaling ratio.
//
// Every estimator draws sample i from the counter-based stream of `rng`, so
// results are reproducible and independent of `workers` (0 = one per hardware
// thread). Curve estimators evaluate all K of a list on nested draws: users
// 0..K-1 of a K-user sample are the first K users of any larger sample. Ratio
// quantities use user 0 of the same draws as their K = 1 baseline.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mid/model.hpp"

namespace mid {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
};

enum class Quantity { Throughput, NormalizedThroughput, MdgRatio, MdgKappa, AsymptoticRatio };

std::string quantity_name(Quantity q);
Quantity parse_quantity(std::string_view name);

struct CurvePoint {
  std::size_t users = 0;
  Estimate value;
  Quantity quantity = Quantity::Throughput;
  NetworkKind network = NetworkKind::pac();
};

/// Standard error of the difference of two independent estimates.
double combined_std_error(const Estimate& a, const Estimate& b);

/// C(K) = E[log2(1 + gamma(K))] in bits per channel use. Needs n >= 2. A
/// symmetric Rayleigh reference network samples max_k h_k directly from its
/// order-statistic law instead of drawing K gains.
Estimate estimate_ergodic_throughput(const NetworkConfig& config, std::uint64_t n, RngSpec rng,
                                     unsigned workers = 1);

/// E[gamma(K)] / E[gamma(1)] with user 0 as the common-random-number baseline.
/// Needs a symmetric configuration.
Estimate estimate_mdg_ratio(const NetworkConfig& config, std::uint64_t n, RngSpec rng, unsigned workers = 1);

/// kappa * E[max-expression], with kappa from bound_constants().
Estimate estimate_mdg_kappa(const NetworkConfig& config, std::uint64_t n, RngSpec rng, unsigned workers = 1);

/// C(K) / log2(ln K). K >= 3.
Estimate asymptotic_ratio(const NetworkConfig& config, std::uint64_t n, RngSpec rng, unsigned workers = 1);

// One-pass curves over a strictly ascending K list. `base.users` is ignored;
// a per-user power list must cover the largest K.

std::vector<Estimate> throughput_curve(const NetworkConfig& base, std::span<const std::size_t> users,
                                       std::uint64_t n, RngSpec rng, unsigned workers = 1);
std::vector<Estimate> normalized_throughput(const NetworkConfig& base, std::span<const std::size_t> users,
                                            std::uint64_t n, RngSpec rng, unsigned workers = 1);
std::vector<Estimate> mdg_ratio_curve(const NetworkConfig& base, std::span<const std::size_t> users,
                                      std::uint64_t n, RngSpec rng, unsigned workers = 1);
std::vector<Estimate> mdg_kappa_curve(const NetworkConfig& base, std::span<const std::size_t> users,
                                      std::uint64_t n, RngSpec rng, unsigned workers = 1);
std::vector<Estimate> asymptotic_ratio_curve(const NetworkConfig& base, std::span<const std::size_t> users,
                                             std::uint64_t n, RngSpec rng, unsigned workers = 1);

/// C(K)/C(1) for each network and K, network-major order. Each network's
/// points share draws across K.
std::vector<CurvePoint> normalized_throughput_curve(const NetworkConfig& base,
                                                    std::span<const NetworkKind> networks,
                                                    std::span<const std::size_t> users, std::uint64_t n,
                                                    RngSpec rng, unsigned workers = 1);

/// Exact per-sample maxima along a K list, evaluated user by user without
/// materializing the state. Exposed for tests and diagnostics.
class PrefixMaxScanner {
 public:
  enum class Score {
    Snr,        // receiver SNR of each user
    KappaTerm,  // the per-user term whose maximum appears in the kappa form of the MDG
  };

  PrefixMaxScanner(const NetworkConfig& base, RngSpec rng, Score score, std::span<const std::size_t> checkpoints);

  /// Writes max over users [0, K_c) into out[c] and returns user 0's score.
  double scan(std::uint64_t sample, std::span<double> out) const;

  std::size_t size() const { return checkpoints_.size(); }

 private:
  template <class CapFn, class ValueFn>
  double scan_users(std::uint64_t sample, std::span<double> out, bool uniform_cap, CapFn cap, ValueFn value) const;

  NetworkConfig config_;
  ChannelSampler sampler_;
  Score score_;
  std::vector<std::size_t> checkpoints_;
  bool prune_;
};

}  // namespace mid
