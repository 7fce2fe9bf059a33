#include "mid/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mid/errors.hpp"

namespace mid {

FadingDistribution FadingDistribution::degenerate(double value) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ConfigError("degenerate fading value must be finite and >= 0");
  }
  return FadingDistribution(Kind::Degenerate, value);
}

double FadingDistribution::from_uniform(double u) const {
  if (kind_ == Kind::Degenerate) {
    return value_;
  }
  return -std::log(u);
}

NetworkKind NetworkKind::reference(Topology mirror_of) {
  if (mirror_of == Topology::Reference) {
    throw ConfigError("a reference network must mirror mac, bc or pac");
  }
  return NetworkKind(Topology::Reference, mirror_of);
}

std::string NetworkKind::name() const {
  switch (topology_) {
    case Topology::CMac:
      return "mac";
    case Topology::CBc:
      return "bc";
    case Topology::CPac:
      return "pac";
    case Topology::Reference:
      break;
  }
  switch (mirror_) {
    case Topology::CMac:
      return "ref-mac";
    case Topology::CBc:
      return "ref-bc";
    default:
      return "ref";
  }
}

NetworkKind NetworkKind::parse(std::string_view name) {
  if (name == "mac") return mac();
  if (name == "bc") return bc();
  if (name == "pac") return pac();
  if (name == "ref" || name == "ref-pac") return reference(Topology::CPac);
  if (name == "ref-mac") return reference(Topology::CMac);
  if (name == "ref-bc") return reference(Topology::CBc);
  throw ConfigError("unknown network '" + std::string(name) + "' (expected mac, bc, pac, ref, ref-mac, ref-bc)");
}

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void NetworkConfig::validate() const {
  if (users == 0) {
    throw ConfigError("number of users K must be >= 1");
  }
  if (users > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("number of users K exceeds 2^32 - 1");
  }
  if (per_user_power.size() != 1 && per_user_power.size() != users) {
    throw ConfigError("per-user power list must hold 1 or K values");
  }
  if (!std::all_of(per_user_power.begin(), per_user_power.end(), positive_finite)) {
    throw ConfigError("per-user powers P_k must be finite and > 0");
  }
  if (!positive_finite(bs_power)) throw ConfigError("base-station power J must be finite and > 0");
  if (!positive_finite(pr_power)) throw ConfigError("PR transmit power Q must be finite and > 0");
  if (!positive_finite(interference_limit)) throw ConfigError("interference limit Gamma must be finite and > 0");
}

bool NetworkConfig::symmetric() const {
  return std::all_of(per_user_power.begin(), per_user_power.end(),
                     [&](double p) { return p == per_user_power.front(); });
}

NetworkConfig NetworkConfig::with_users(std::size_t k) const {
  NetworkConfig out = *this;
  out.users = k;
  if (out.per_user_power.size() > 1) {
    if (k > out.per_user_power.size()) {
      throw ConfigError("per-user power list shorter than requested K");
    }
    out.per_user_power.resize(k);
  }
  return out;
}

NetworkConfig NetworkConfig::with_kind(NetworkKind k) const {
  NetworkConfig out = *this;
  out.kind = k;
  return out;
}

LinkGains::Shape expected_g_shape(const NetworkKind& kind) {
  switch (kind.topology()) {
    case Topology::CMac:
    case Topology::CPac:
      return LinkGains::Shape::PerUser;
    case Topology::CBc:
      return LinkGains::Shape::Scalar;
    case Topology::Reference:
      break;
  }
  return LinkGains::Shape::Absent;
}

LinkGains::Shape expected_e_shape(const NetworkKind& kind) {
  switch (kind.topology()) {
    case Topology::CBc:
    case Topology::CPac:
      return LinkGains::Shape::PerUser;
    case Topology::CMac:
      return LinkGains::Shape::Scalar;
    case Topology::Reference:
      break;
  }
  return LinkGains::Shape::Absent;
}

namespace {

LinkGains draw_link(const ChannelSampler& sampler, const FadingDistribution& dist, ChannelRole role,
                    LinkGains::Shape shape, std::uint64_t sample, std::size_t users) {
  switch (shape) {
    case LinkGains::Shape::Absent:
      return {};
    case LinkGains::Shape::Scalar:
      return LinkGains::scalar(sampler.gain(dist, role, sample, 0));
    case LinkGains::Shape::PerUser:
      break;
  }
  std::vector<double> gains(users);
  for (std::size_t k = 0; k < users; ++k) {
    gains[k] = sampler.gain(dist, role, sample, static_cast<std::uint32_t>(k));
  }
  return LinkGains::per_user(std::move(gains));
}

}  // namespace

FadingState sample_state(const NetworkConfig& config, RngSpec rng, std::uint64_t sample_index) {
  config.validate();
  const ChannelSampler sampler(rng);
  FadingState state;
  state.h.resize(config.users);
  for (std::size_t k = 0; k < config.users; ++k) {
    state.h[k] = sampler.gain(config.dist_h, ChannelRole::DataH, sample_index, static_cast<std::uint32_t>(k));
  }
  state.g = draw_link(sampler, config.dist_g, ChannelRole::InterferenceG, expected_g_shape(config.kind),
                      sample_index, config.users);
  state.e = draw_link(sampler, config.dist_e, ChannelRole::PrimaryE, expected_e_shape(config.kind), sample_index,
                      config.users);
  if (config.sample_pr_link) {
    state.f = sampler.gain(FadingDistribution::rayleigh(), ChannelRole::PrimaryLinkF, sample_index, 0);
  }
  return state;
}

}  // namespace mid
