#pragma once

// Network configurations, fading laws and reproducible sampling of
// block-fading channel states for spectrum-sharing cognitive radio networks.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mid/philox.hpp"

namespace mid {

/// Law of a channel power gain.
///
/// RayleighUnitPower is the only physical law; Degenerate is a point mass used
/// to pin channels to a fixed value in tests and diagnostics.
class FadingDistribution {
 public:
  enum class Kind { RayleighUnitPower, Degenerate };

  static FadingDistribution rayleigh() { return FadingDistribution(Kind::RayleighUnitPower, 0.0); }
  static FadingDistribution degenerate(double value);

  Kind kind() const { return kind_; }
  bool is_rayleigh() const { return kind_ == Kind::RayleighUnitPower; }
  double mean() const { return is_rayleigh() ? 1.0 : value_; }

  /// Maps a uniform draw in (0, 1) to a power gain.
  double from_uniform(double u) const;

  friend bool operator==(const FadingDistribution&, const FadingDistribution&) = default;

 private:
  FadingDistribution(Kind kind, double value) : kind_(kind), value_(value) {}

  Kind kind_;
  double value_;
};

enum class Topology { CMac, CBc, CPac, Reference };

/// One of the three CR networks, or the reference network obtained by removing
/// the PR link from one of them. The mirror decides whether the reference
/// transmitter uses the per-user budget P_k (MAC, PAC) or the base-station
/// budget J (BC).
class NetworkKind {
 public:
  static constexpr NetworkKind mac() { return NetworkKind(Topology::CMac, Topology::CMac); }
  static constexpr NetworkKind bc() { return NetworkKind(Topology::CBc, Topology::CBc); }
  static constexpr NetworkKind pac() { return NetworkKind(Topology::CPac, Topology::CPac); }
  static NetworkKind reference(Topology mirror_of = Topology::CPac);

  constexpr Topology topology() const { return topology_; }
  constexpr Topology mirror_of() const { return mirror_; }
  constexpr bool is_reference() const { return topology_ == Topology::Reference; }

  /// True when the transmit budget is the base-station power J.
  constexpr bool uses_bs_power() const { return mirror_ == Topology::CBc; }

  /// Short name used on the command line and in output files: mac, bc, pac,
  /// ref (PAC mirror), ref-mac, ref-bc.
  std::string name() const;
  static NetworkKind parse(std::string_view name);

  friend constexpr bool operator==(const NetworkKind&, const NetworkKind&) = default;

 private:
  constexpr NetworkKind(Topology topology, Topology mirror) : topology_(topology), mirror_(mirror) {}

  Topology topology_;
  Topology mirror_;
};

struct NetworkConfig {
  NetworkKind kind = NetworkKind::pac();
  std::size_t users = 1;
  /// Either one symmetric value P or exactly `users` values P_k.
  std::vector<double> per_user_power{1.0};
  double bs_power = 1.0;            // J
  double pr_power = 1.0;            // Q
  double interference_limit = 1.0;  // Gamma
  FadingDistribution dist_h = FadingDistribution::rayleigh();
  FadingDistribution dist_g = FadingDistribution::rayleigh();
  FadingDistribution dist_e = FadingDistribution::rayleigh();
  /// Draw the PR-Tx -> PR-Rx gain f as well. No metric reads it.
  bool sample_pr_link = false;

  /// Throws ConfigError when K = 0, a power is nonpositive or not finite, or
  /// the power list length is neither 1 nor K.
  void validate() const;

  bool symmetric() const;
  double user_power(std::size_t k) const {
    return per_user_power.size() == 1 ? per_user_power.front() : per_user_power[k];
  }
  /// Transmit budget of user k in this network (P_k, or J for BC and its mirror).
  double transmit_budget(std::size_t k) const {
    return kind.uses_bs_power() ? bs_power : user_power(k);
  }
  bool all_rayleigh() const { return dist_h.is_rayleigh() && dist_g.is_rayleigh() && dist_e.is_rayleigh(); }

  /// Same network with K users; a per-user power list is truncated.
  NetworkConfig with_users(std::size_t k) const;
  NetworkConfig with_kind(NetworkKind k) const;
};

/// Gains of one PR-related channel: absent, a single shared gain, or one gain
/// per CR user.
class LinkGains {
 public:
  enum class Shape { Absent, Scalar, PerUser };

  LinkGains() = default;
  static LinkGains scalar(double gain) { return LinkGains(Shape::Scalar, {gain}); }
  static LinkGains per_user(std::vector<double> gains) { return LinkGains(Shape::PerUser, std::move(gains)); }

  Shape shape() const { return shape_; }
  /// Gain seen by user k; a scalar link returns its single value for every k.
  double at(std::size_t k) const { return shape_ == Shape::Scalar ? values_.front() : values_.at(k); }
  const std::vector<double>& values() const { return values_; }

  friend bool operator==(const LinkGains&, const LinkGains&) = default;

 private:
  LinkGains(Shape shape, std::vector<double> values) : shape_(shape), values_(std::move(values)) {}

  Shape shape_ = Shape::Absent;
  std::vector<double> values_;
};

/// One block-fading realization of every channel power gain.
struct FadingState {
  std::vector<double> h;  // CR data channels
  LinkGains g;            // CR transmitter(s) -> PR-Rx
  LinkGains e;            // PR-Tx -> CR receiver(s)
  std::optional<double> f;

  friend bool operator==(const FadingState&, const FadingState&) = default;
};

/// Expected shapes of g and e for a network kind.
LinkGains::Shape expected_g_shape(const NetworkKind& kind);
LinkGains::Shape expected_e_shape(const NetworkKind& kind);

struct RngSpec {
  std::uint64_t master_seed = 0;
};

/// Channel-role tags; each role has its own Philox counter space.
enum class ChannelRole : std::uint32_t {
  DataH = 0,
  InterferenceG = 1,
  PrimaryE = 2,
  PrimaryLinkF = 3,
  OrderStatistic = 4,
};

/// Counter-based stream of channel draws. A uniform is addressed by
/// (sample index, channel role, user index); users 2j and 2j+1 share one Philox
/// block. Scalar channels use user index 0.
class ChannelSampler {
 public:
  explicit ChannelSampler(RngSpec rng)
      : key_{static_cast<std::uint32_t>(rng.master_seed), static_cast<std::uint32_t>(rng.master_seed >> 32)} {}

  std::array<double, 2> uniform_pair(ChannelRole role, std::uint64_t sample, std::uint32_t pair) const {
    const PhiloxCounter out = philox4x32_10(
        {static_cast<std::uint32_t>(sample), static_cast<std::uint32_t>(sample >> 32), pair,
         static_cast<std::uint32_t>(role)},
        key_);
    return {open_unit_interval(out[0], out[1]), open_unit_interval(out[2], out[3])};
  }

  double uniform(ChannelRole role, std::uint64_t sample, std::uint32_t user) const {
    return uniform_pair(role, sample, user >> 1)[user & 1u];
  }

  double gain(const FadingDistribution& dist, ChannelRole role, std::uint64_t sample, std::uint32_t user) const {
    return dist.from_uniform(uniform(role, sample, user));
  }

 private:
  PhiloxKey key_;
};

/// Draws the fading state of sample `sample_index`. Throws ConfigError on an
/// invalid configuration.
FadingState sample_state(const NetworkConfig& config, RngSpec rng, std::uint64_t sample_index);

}  // namespace mid
