#include "mid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mid/analysis.hpp"
#include "mid/errors.hpp"
#include "mid/parallel.hpp"
#include "mid/scheduler.hpp"

namespace mid {

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::Throughput:
      return "throughput";
    case Quantity::NormalizedThroughput:
      return "normalized_throughput";
    case Quantity::MdgRatio:
      return "mdg_ratio";
    case Quantity::MdgKappa:
      return "mdg_kappa";
    case Quantity::AsymptoticRatio:
      return "asymptotic_ratio";
  }
  return "unknown";
}

Quantity parse_quantity(std::string_view name) {
  for (Quantity q : {Quantity::Throughput, Quantity::NormalizedThroughput, Quantity::MdgRatio, Quantity::MdgKappa,
                     Quantity::AsymptoticRatio}) {
    if (quantity_name(q) == name) return q;
  }
  throw ConfigError("unknown quantity '" + std::string(name) + "'");
}

double combined_std_error(const Estimate& a, const Estimate& b) { return std::hypot(a.std_error, b.std_error); }

// ---------------------------------------------------------------------------
// Streaming scanner

PrefixMaxScanner::PrefixMaxScanner(const NetworkConfig& base, RngSpec rng, Score score,
                                   std::span<const std::size_t> checkpoints)
    : sampler_(rng), score_(score), checkpoints_(checkpoints.begin(), checkpoints.end()) {
  if (checkpoints_.empty()) {
    throw ConfigError("K list must not be empty");
  }
  for (std::size_t c = 0; c < checkpoints_.size(); ++c) {
    if (checkpoints_[c] == 0) throw ConfigError("number of users K must be >= 1");
    if (c > 0 && checkpoints_[c] <= checkpoints_[c - 1]) throw ConfigError("K list must be strictly ascending");
  }
  config_ = base.with_users(checkpoints_.back());
  config_.validate();
  prune_ = config_.dist_h.is_rayleigh();
}

// Users whose score cannot exceed the running maximum are skipped without
// drawing their g/e channels. score_k <= h_k * cap_k holds for every score, so
// a skipped user never changes the maximum and the result equals full
// evaluation. With a common cap the test runs on the uniform behind
// h = -ln(u); the 1e-9 margin keeps it conservative under rounding.
template <class CapFn, class ValueFn>
double PrefixMaxScanner::scan_users(std::uint64_t sample, std::span<double> out, bool uniform_cap, CapFn cap,
                                    ValueFn value) const {
  const std::size_t users = checkpoints_.back();
  double best = -std::numeric_limits<double>::infinity();
  double first = 0.0;
  double skip_above = 2.0;  // u >= skip_above => skip; > 1 disables
  std::size_t next = 0;

  for (std::size_t pair = 0; 2 * pair < users; ++pair) {
    const auto u = sampler_.uniform_pair(ChannelRole::DataH, sample, static_cast<std::uint32_t>(pair));
    for (std::size_t half = 0; half < 2; ++half) {
      const std::size_t k = 2 * pair + half;
      if (k >= users) break;
      const bool skip_uniform = prune_ && uniform_cap && u[half] >= skip_above;
      if (!skip_uniform) {
        const double h = config_.dist_h.from_uniform(u[half]);
        if (!(prune_ && k > 0 && h * cap(k) <= best)) {
          const double v = value(k, h);
          if (k == 0) first = v;
          if (v > best) {
            best = v;
            if (prune_ && uniform_cap) {
              const double c = cap(k);
              skip_above = best > 0.0 && c > 0.0 ? std::exp(-best / c) * (1.0 + 1e-9) : 2.0;
            }
          }
        }
      }
      if (k + 1 == checkpoints_[next]) {
        out[next++] = best;
      }
    }
  }
  return first;
}

double PrefixMaxScanner::scan(std::uint64_t sample, std::span<double> out) const {
  const double q = config_.pr_power;
  const double gamma = config_.interference_limit;
  const bool symmetric = config_.symmetric();
  auto draw = [&](const FadingDistribution& dist, ChannelRole role, std::size_t k) {
    return sampler_.gain(dist, role, sample, static_cast<std::uint32_t>(k));
  };
  auto user_cap = [&](std::size_t k) { return config_.user_power(k); };
  const bool kappa = score_ == Score::KappaTerm;

  switch (config_.kind.topology()) {
    case Topology::CMac: {
      if (kappa) {
        return scan_users(sample, out, symmetric, user_cap, [&](std::size_t k, double h) {
          return h * max_transmit_power(config_.user_power(k), gamma, draw(config_.dist_g, ChannelRole::InterferenceG, k));
        });
      }
      const double e = draw(config_.dist_e, ChannelRole::PrimaryE, 0);
      return scan_users(sample, out, symmetric, user_cap, [&](std::size_t k, double h) {
        const double p = max_transmit_power(config_.user_power(k), gamma, draw(config_.dist_g, ChannelRole::InterferenceG, k));
        return receiver_snr(h, p, q, e);
      });
    }
    case Topology::CBc: {
      auto value_e = [&](std::size_t k) { return draw(config_.dist_e, ChannelRole::PrimaryE, k); };
      if (kappa) {
        return scan_users(sample, out, true, [](std::size_t) { return 1.0; },
                          [&](std::size_t k, double h) { return h / (1.0 + q * value_e(k)); });
      }
      const double p = max_transmit_power(config_.bs_power, gamma, draw(config_.dist_g, ChannelRole::InterferenceG, 0));
      return scan_users(sample, out, true, [p](std::size_t) { return p; },
                        [&](std::size_t k, double h) { return receiver_snr(h, p, q, value_e(k)); });
    }
    case Topology::CPac:
      return scan_users(sample, out, symmetric, user_cap, [&](std::size_t k, double h) {
        const double p = max_transmit_power(config_.user_power(k), gamma, draw(config_.dist_g, ChannelRole::InterferenceG, k));
        return receiver_snr(h, p, q, draw(config_.dist_e, ChannelRole::PrimaryE, k));
      });
    case Topology::Reference:
      break;
  }
  if (kappa) {
    return scan_users(sample, out, true, [](std::size_t) { return 1.0; }, [](std::size_t, double h) { return h; });
  }
  const bool common = symmetric || config_.kind.uses_bs_power();
  return scan_users(sample, out, common, [&](std::size_t k) { return config_.transmit_budget(k); },
                    [&](std::size_t k, double h) { return h * config_.transmit_budget(k); });
}

// ---------------------------------------------------------------------------
// Estimators

namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

void require_samples(std::uint64_t n) {
  if (n < 2) throw ConfigError("Monte Carlo estimation needs n >= 2 samples");
}

void require_symmetric(const NetworkConfig& config) {
  if (!config.symmetric()) {
    throw UnsupportedConfigError("multiuser diversity gain is defined for symmetric powers only");
  }
}

Estimate mean_estimate(const PairMoments& m) {
  const double n = static_cast<double>(m.n);
  const double variance = m.n > 1 ? m.m2x / (n - 1.0) : 0.0;
  return {m.mean_x, std::sqrt(std::max(variance, 0.0) / n), m.n};
}

// Ratio of means with a first-order (delta method) standard error.
Estimate ratio_estimate(const PairMoments& m) {
  const double n = static_cast<double>(m.n);
  const double ratio = m.mean_x / m.mean_y;
  const double spread = (m.m2x - 2.0 * ratio * m.cxy + ratio * ratio * m.m2y) / (n - 1.0);
  const double variance = spread / (n * m.mean_y * m.mean_y);
  return {ratio, std::sqrt(std::max(variance, 0.0)), m.n};
}

Estimate scaled(Estimate e, double factor) {
  e.mean *= factor;
  e.std_error *= std::abs(factor);
  return e;
}

/// Runs the scanner and feeds (f(max_K), f(user 0)) into one moment set per K.
template <class Transform>
MomentSet scan_moments(const NetworkConfig& base, std::span<const std::size_t> users, std::uint64_t n, RngSpec rng,
                       unsigned workers, PrefixMaxScanner::Score score, Transform f) {
  require_samples(n);
  const PrefixMaxScanner scanner(base, rng, score, users);
  const std::size_t points = scanner.size();
  return reduce_samples(n, workers, MomentSet(points), [&](std::uint64_t i, MomentSet& acc) {
    thread_local std::vector<double> maxima;
    maxima.resize(points);
    const double first = f(scanner.scan(i, maxima));
    for (std::size_t c = 0; c < points; ++c) acc.items[c].add(f(maxima[c]), first);
  });
}

bool use_order_statistic(const NetworkConfig& config) {
  return config.kind.is_reference() && config.dist_h.is_rayleigh() &&
         (config.symmetric() || config.kind.uses_bs_power());
}

void check_users(std::span<const std::size_t> users) {
  if (users.empty()) throw ConfigError("K list must not be empty");
  for (std::size_t c = 0; c < users.size(); ++c) {
    if (users[c] == 0) throw ConfigError("number of users K must be >= 1");
    if (c > 0 && users[c] <= users[c - 1]) throw ConfigError("K list must be strictly ascending");
  }
}

// max of K unit exponentials by inversion of its CDF (1 - e^{-x})^K:
// x = -ln(1 - u^{1/K}).
double largest_exponential(double u, double users) { return -std::log(-std::expm1(std::log(u) / users)); }

std::vector<Estimate> throughput_by_order_statistic(const NetworkConfig& base, std::span<const std::size_t> users,
                                                    std::uint64_t n, RngSpec rng, unsigned workers) {
  const NetworkConfig config = base.with_users(users.back());
  config.validate();
  const double budget = config.transmit_budget(0);
  const ChannelSampler sampler(rng);
  const MomentSet moments = reduce_samples(n, workers, MomentSet(users.size()), [&](std::uint64_t i, MomentSet& acc) {
    const double u = sampler.uniform(ChannelRole::OrderStatistic, i, 0);
    for (std::size_t c = 0; c < users.size(); ++c) {
      const double v = log2_1p(largest_exponential(u, static_cast<double>(users[c])) * budget);
      acc.items[c].add(v, 0.0);
    }
  });
  std::vector<Estimate> out;
  for (const PairMoments& m : moments.items) out.push_back(mean_estimate(m));
  return out;
}

const std::size_t* single(const NetworkConfig& config) { return &config.users; }

}  // namespace

std::vector<Estimate> throughput_curve(const NetworkConfig& base, std::span<const std::size_t> users,
                                       std::uint64_t n, RngSpec rng, unsigned workers) {
  require_samples(n);
  check_users(users);
  if (use_order_statistic(base)) {
    return throughput_by_order_statistic(base, users, n, rng, workers);
  }
  const MomentSet moments = scan_moments(base, users, n, rng, workers, PrefixMaxScanner::Score::Snr, log2_1p);
  std::vector<Estimate> out;
  for (const PairMoments& m : moments.items) out.push_back(mean_estimate(m));
  return out;
}

std::vector<Estimate> normalized_throughput(const NetworkConfig& base, std::span<const std::size_t> users,
                                            std::uint64_t n, RngSpec rng, unsigned workers) {
  const MomentSet moments = scan_moments(base, users, n, rng, workers, PrefixMaxScanner::Score::Snr, log2_1p);
  std::vector<Estimate> out;
  for (const PairMoments& m : moments.items) out.push_back(ratio_estimate(m));
  return out;
}

std::vector<Estimate> mdg_ratio_curve(const NetworkConfig& base, std::span<const std::size_t> users,
                                      std::uint64_t n, RngSpec rng, unsigned workers) {
  require_symmetric(base);
  const MomentSet moments =
      scan_moments(base, users, n, rng, workers, PrefixMaxScanner::Score::Snr, [](double x) { return x; });
  std::vector<Estimate> out;
  for (const PairMoments& m : moments.items) out.push_back(ratio_estimate(m));
  return out;
}

std::vector<Estimate> mdg_kappa_curve(const NetworkConfig& base, std::span<const std::size_t> users,
                                      std::uint64_t n, RngSpec rng, unsigned workers) {
  require_symmetric(base);
  check_users(users);
  const double kappa = bound_constants(base.with_users(users.back())).kappa_for(base.kind);
  const MomentSet moments =
      scan_moments(base, users, n, rng, workers, PrefixMaxScanner::Score::KappaTerm, [](double x) { return x; });
  std::vector<Estimate> out;
  for (const PairMoments& m : moments.items) out.push_back(scaled(mean_estimate(m), kappa));
  return out;
}

std::vector<Estimate> asymptotic_ratio_curve(const NetworkConfig& base, std::span<const std::size_t> users,
                                             std::uint64_t n, RngSpec rng, unsigned workers) {
  check_users(users);
  std::vector<double> scale;
  for (std::size_t k : users) scale.push_back(scaling_function(k));
  std::vector<Estimate> out = throughput_curve(base, users, n, rng, workers);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = scaled(out[c], 1.0 / scale[c]);
  return out;
}

std::vector<CurvePoint> normalized_throughput_curve(const NetworkConfig& base,
                                                    std::span<const NetworkKind> networks,
                                                    std::span<const std::size_t> users, std::uint64_t n,
                                                    RngSpec rng, unsigned workers) {
  std::vector<CurvePoint> points;
  for (const NetworkKind& network : networks) {
    const std::vector<Estimate> values = normalized_throughput(base.with_kind(network), users, n, rng, workers);
    for (std::size_t c = 0; c < users.size(); ++c) {
      points.push_back({users[c], values[c], Quantity::NormalizedThroughput, network});
    }
  }
  return points;
}

Estimate estimate_ergodic_throughput(const NetworkConfig& config, std::uint64_t n, RngSpec rng, unsigned workers) {
  return throughput_curve(config, {single(config), 1}, n, rng, workers).front();
}

Estimate estimate_mdg_ratio(const NetworkConfig& config, std::uint64_t n, RngSpec rng, unsigned workers) {
  return mdg_ratio_curve(config, {single(config), 1}, n, rng, workers).front();
}

Estimate estimate_mdg_kappa(const NetworkConfig& config, std::uint64_t n, RngSpec rng, unsigned workers) {
  return mdg_kappa_curve(config, {single(config), 1}, n, rng, workers).front();
}

Estimate asymptotic_ratio(const NetworkConfig& config, std::uint64_t n, RngSpec rng, unsigned workers) {
  return asymptotic_ratio_curve(config, {single(config), 1}, n, rng, workers).front();
}

}  // namespace mid
