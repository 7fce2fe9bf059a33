#include "mid/scheduler.hpp"

#include "mid/errors.hpp"

namespace mid {

namespace {

void check_shape(const FadingState& state, const NetworkConfig& config) {
  if (state.h.size() != config.users) {
    throw StructuralError("state holds " + std::to_string(state.h.size()) + " data gains but K = " +
                          std::to_string(config.users));
  }
  auto check_link = [&](const LinkGains& link, LinkGains::Shape expected, const char* name) {
    if (link.shape() != expected) {
      throw StructuralError(std::string("channel ") + name + " has the wrong shape for network " +
                            config.kind.name());
    }
    if (expected == LinkGains::Shape::PerUser && link.values().size() != config.users) {
      throw StructuralError(std::string("channel ") + name + " length differs from K");
    }
  };
  check_link(state.g, expected_g_shape(config.kind), "g");
  check_link(state.e, expected_e_shape(config.kind), "e");
}

}  // namespace

std::vector<double> per_user_snr(const FadingState& state, const NetworkConfig& config) {
  check_shape(state, config);
  const std::size_t users = config.users;
  const double q = config.pr_power;
  const double gamma = config.interference_limit;
  std::vector<double> snr(users);

  switch (config.kind.topology()) {
    case Topology::CMac:
      for (std::size_t k = 0; k < users; ++k) {
        snr[k] = receiver_snr(state.h[k], max_transmit_power(config.user_power(k), gamma, state.g.at(k)), q,
                              state.e.at(0));
      }
      break;
    case Topology::CBc: {
      const double p = max_transmit_power(config.bs_power, gamma, state.g.at(0));
      for (std::size_t k = 0; k < users; ++k) {
        snr[k] = receiver_snr(state.h[k], p, q, state.e.at(k));
      }
      break;
    }
    case Topology::CPac:
      for (std::size_t k = 0; k < users; ++k) {
        snr[k] = receiver_snr(state.h[k], max_transmit_power(config.user_power(k), gamma, state.g.at(k)), q,
                              state.e.at(k));
      }
      break;
    case Topology::Reference:
      for (std::size_t k = 0; k < users; ++k) {
        snr[k] = state.h[k] * config.transmit_budget(k);
      }
      break;
  }
  return snr;
}

ScheduleDecision select_user(std::span<const double> snrs) {
  if (snrs.empty()) {
    throw StructuralError("cannot select a user from an empty SNR list");
  }
  ScheduleDecision decision;
  decision.per_user_snr.assign(snrs.begin(), snrs.end());
  decision.realized_snr = snrs[0];
  for (std::size_t k = 1; k < snrs.size(); ++k) {
    if (snrs[k] > decision.realized_snr) {
      decision.realized_snr = snrs[k];
      decision.selected_user = k;
    }
  }
  return decision;
}

double realized_snr(const FadingState& state, const NetworkConfig& config) {
  const std::vector<double> snr = per_user_snr(state, config);
  return select_user(snr).realized_snr;
}

}  // namespace mid
