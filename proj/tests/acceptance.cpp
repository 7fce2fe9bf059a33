// Acceptance suite. Runs every criterion at its stated sample size and
// tolerance and prints one PASS/FAIL line per criterion (plus indented
// detail). Pass criterion numbers as arguments to run a subset.
//
//   mid_acceptance          # all criteria
//   mid_acceptance 1 3      # criteria 1 and 3

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mid/analysis.hpp"
#include "mid/experiment.hpp"
#include "mid/metrics.hpp"
#include "mid/scheduler.hpp"
#include "oracles.hpp"

using namespace mid;

namespace {

// J = Q = P = Gamma = 1, unit-power Rayleigh everywhere.
NetworkConfig unit_config(NetworkKind kind) {
  NetworkConfig c;
  c.kind = kind;
  return c;
}

constexpr double kAlphaMac = 1.17439;
constexpr double kAlphaBc = 1.67688;
constexpr double kAlphaPac = 1.96930;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const NetworkKind kCr[] = {NetworkKind::mac(), NetworkKind::bc(), NetworkKind::pac()};
const NetworkKind kAll[] = {NetworkKind::mac(), NetworkKind::bc(), NetworkKind::pac(), NetworkKind::reference()};

// 1. MDG sandwich H_K <= MDG <= alpha H_K for the three CR networks.
Outcome mdg_sandwich() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::size_t> users{1, 2, 4, 8, 16, 32, 64, 100};
  const BoundConstants constants = bound_constants(NetworkConfig{});
  out.check(std::abs(constants.alpha_mac - kAlphaMac) < 1e-5 && std::abs(constants.alpha_bc - kAlphaBc) < 1e-5 &&
                std::abs(constants.alpha_pac - kAlphaPac) < 3e-5,
            fmt("analytic alphas %.6f %.6f %.6f", constants.alpha_mac, constants.alpha_bc, constants.alpha_pac));
  for (const NetworkKind kind : kCr) {
    const double alpha = kind == NetworkKind::mac() ? kAlphaMac : kind == NetworkKind::bc() ? kAlphaBc : kAlphaPac;
    const auto curve = mdg_ratio_curve(unit_config(kind), users, 100'000, RngSpec{kSeed});
    for (std::size_t i = 0; i < users.size(); ++i) {
      const double h = reference_mdg_exact(users[i]);
      const Estimate& e = curve[i];
      const bool ok = e.mean >= h - 3.0 * e.std_error && e.mean <= alpha * h + 3.0 * e.std_error;
      out.check(ok, fmt("%-3s K=%-3zu MDG=%.5f SE=%.5f in [%.5f, %.5f]", kind.name().c_str(), users[i], e.mean,
                        e.std_error, h, alpha * h));
    }
  }
  const double elapsed = seconds_since(start);
  out.check(elapsed < 120.0, fmt("runtime %.1f s < 120 s", elapsed));
  return out;
}

// 2. Per-draw bounds on the selected SNR, checked exactly.
Outcome per_draw_bounds() {
  Outcome out;
  for (std::size_t users : {2ul, 10ul, 100ul}) {
    const NetworkConfig c = unit_config(NetworkKind::pac()).with_users(users);
    std::size_t lower_fail = 0;
    std::size_t upper_fail = 0;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
      const FadingState s = sample_state(c, RngSpec{kSeed}, i);
      const std::vector<double> snr = per_user_snr(s, c);
      const double best = select_user(snr).realized_snr;
      const auto strongest = static_cast<std::size_t>(std::max_element(s.h.begin(), s.h.end()) - s.h.begin());
      lower_fail += best >= snr[strongest] ? 0 : 1;
      upper_fail += best <= c.user_power(0) * s.h[strongest] ? 0 : 1;
    }
    out.check(lower_fail == 0, fmt("K=%zu lower: gamma(K) >= SNR of largest-h user on 10000/10000 draws (%zu violations)",
                                   users, lower_fail));
    out.check(upper_fail == 0,
              fmt("K=%zu upper: gamma(K) <= P max h on 10000/10000 draws (%zu violations)", users, upper_fail));
  }
  return out;
}

// 3. Reference MDG equals the harmonic number.
Outcome reference_oracle() {
  Outcome out;
  const std::vector<std::size_t> users{2, 10, 100};
  const double frozen[] = {1.5, 2.9290, 5.18738};
  const auto curve = mdg_ratio_curve(unit_config(NetworkKind::reference()), users, 100'000, RngSpec{kSeed});
  for (std::size_t i = 0; i < users.size(); ++i) {
    const double h = oracle::harmonic(users[i]);
    out.check(std::abs(h - frozen[i]) < 5e-5, fmt("H_%zu = %.6f matches %.5f", users[i], h, frozen[i]));
    const Estimate& e = curve[i];
    out.check(std::abs(e.mean - h) <= 3.0 * e.std_error,
              fmt("ref K=%-3zu MDG=%.5f SE=%.5f vs H_K=%.5f", users[i], e.mean, e.std_error, h));
  }
  return out;
}

// 4. Ratio and kappa definitions of the MDG agree.
Outcome definitions_agree() {
  Outcome out;
  const std::vector<std::size_t> users{2, 10, 50};
  for (const NetworkKind kind : kAll) {
    const auto ratio = mdg_ratio_curve(unit_config(kind), users, 100'000, RngSpec{kSeed});
    const auto kappa = mdg_kappa_curve(unit_config(kind), users, 100'000, RngSpec{kSeed + 1});
    for (std::size_t i = 0; i < users.size(); ++i) {
      const double se = combined_std_error(ratio[i], kappa[i]);
      out.check(std::abs(ratio[i].mean - kappa[i].mean) <= 3.0 * se,
                fmt("%-3s K=%-2zu ratio=%.5f kappa=%.5f |diff|=%.5f <= 3 SE=%.5f", kind.name().c_str(), users[i],
                    ratio[i].mean, kappa[i].mean, std::abs(ratio[i].mean - kappa[i].mean), 3.0 * se));
    }
  }
  return out;
}

// 5. Normalized throughput ordering between networks.
Outcome fig1_ordering() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::size_t> users{1, 16, 64, 100};
  const auto points = normalized_throughput_curve(NetworkConfig{}, kAll, users, 100'000, RngSpec{kSeed});
  auto at = [&](const NetworkKind& kind, std::size_t k) {
    for (const CurvePoint& p : points) {
      if (p.network == kind && p.users == k) return p.value;
    }
    return Estimate{};
  };
  for (const NetworkKind kind : kAll) {
    out.check(at(kind, 1).mean == 1.0, fmt("%-3s K=1 normalized throughput is exactly 1", kind.name().c_str()));
  }
  for (std::size_t k : {16ul, 64ul, 100ul}) {
    const Estimate ref = at(NetworkKind::reference(), k);
    for (const NetworkKind kind : kCr) {
      const Estimate cr = at(kind, k);
      out.check(cr.mean >= ref.mean - 3.0 * combined_std_error(cr, ref),
                fmt("K=%-3zu %-3s %.5f >= ref %.5f - 3 SE", k, kind.name().c_str(), cr.mean, ref.mean));
    }
    const Estimate pac = at(NetworkKind::pac(), k);
    const Estimate mac = at(NetworkKind::mac(), k);
    const Estimate bc = at(NetworkKind::bc(), k);
    const Estimate& best = mac.mean >= bc.mean ? mac : bc;
    out.check(pac.mean >= best.mean - 3.0 * combined_std_error(pac, best),
              fmt("K=%-3zu pac %.5f >= max(mac %.5f, bc %.5f) - 3 SE", k, pac.mean, mac.mean, bc.mean));
  }
  const double elapsed = seconds_since(start);
  out.check(elapsed < 120.0, fmt("runtime %.1f s < 120 s", elapsed));
  return out;
}

// 6. Throughput / log2(ln K) band and trend for K = 1e3 .. 1e6.
Outcome scaling_trend() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::size_t> users{1'000, 10'000, 100'000, 1'000'000};
  for (const NetworkKind kind : kAll) {
    const auto ratio = asymptotic_ratio_curve(unit_config(kind), users, 2'000, RngSpec{kSeed});
    for (std::size_t i = 0; i < users.size(); ++i) {
      out.check(ratio[i].mean >= 0.90 && ratio[i].mean <= 1.25,
                fmt("%-3s K=%-7zu C(K)/log2(ln K)=%.5f (SE %.5f) in [0.90, 1.25]", kind.name().c_str(), users[i],
                    ratio[i].mean, ratio[i].std_error));
    }
    const double first = std::abs(ratio.front().mean - 1.0);
    const double last = std::abs(ratio.back().mean - 1.0);
    const double se = combined_std_error(ratio.front(), ratio.back());
    out.check(last <= first + 3.0 * se,
              fmt("%-3s trend |r(1e6)-1|=%.5f <= |r(1e3)-1|=%.5f + 3 SE=%.5f", kind.name().c_str(), last, first,
                  3.0 * se));
  }
  const double elapsed = seconds_since(start);
  out.check(elapsed < 900.0, fmt("runtime %.1f s < 900 s", elapsed));
  return out;
}

// 7. Analytic constants against quadrature and brute-force Monte Carlo.
Outcome analytic_constants() {
  Outcome out;
  const double capped = expected_capped_power(1.0, 1.0);
  const double attenuation = expected_interference_attenuation(1.0);
  out.check(std::abs(capped - 0.851504) < 1e-5, fmt("E[min(P,G/g)] = %.7f ~ 0.851504", capped));
  out.check(std::abs(attenuation - 0.596347) < 1e-5, fmt("E[1/(1+Qe)] = %.7f ~ 0.596347", attenuation));
  const double quad_capped = oracle::capped_power(1.0, 1.0);
  const double quad_attenuation = oracle::interference_attenuation(1.0);
  out.check(std::abs(capped - quad_capped) < 1e-5, fmt("quadrature %.10f, |diff| = %.2e", quad_capped,
                                                       std::abs(capped - quad_capped)));
  out.check(std::abs(attenuation - quad_attenuation) < 1e-5,
            fmt("quadrature %.10f, |diff| = %.2e", quad_attenuation, std::abs(attenuation - quad_attenuation)));
  const auto mc_capped = oracle::monte_carlo(10'000'000, kSeed, [](std::mt19937_64& rng) {
    return std::min(1.0, 1.0 / std::exponential_distribution<double>(1.0)(rng));
  });
  const auto mc_attenuation = oracle::monte_carlo(10'000'000, kSeed + 1, [](std::mt19937_64& rng) {
    return 1.0 / (1.0 + std::exponential_distribution<double>(1.0)(rng));
  });
  out.check(std::abs(capped - mc_capped.mean) <= 4.0 * mc_capped.std_error,
            fmt("MC 1e7: %.6f (SE %.1e)", mc_capped.mean, mc_capped.std_error));
  out.check(std::abs(attenuation - mc_attenuation.mean) <= 4.0 * mc_attenuation.std_error,
            fmt("MC 1e7: %.6f (SE %.1e)", mc_attenuation.mean, mc_attenuation.std_error));
  return out;
}

// 8. Output files are byte-identical for 1 and 8 workers.
Outcome determinism() {
  Outcome out;
  struct Case {
    const char* preset;
    const char* users;
    std::uint64_t samples;
  };
  for (const Case& c : {Case{"fig1", "1,2,5,10,50,100", 20'000}, Case{"theorem-suite", "1,2,4,8,16,32,64,100", 20'000},
                        Case{"fig2", "1000,10000", 200}}) {
    std::string bytes[2];
    int slot = 0;
    for (const char* workers : {"1", "8"}) {
      for (const char* format : {"csv", "json"}) {
        RawOptions raw;
        raw.preset = c.preset;
        raw.users = c.users;
        raw.samples = c.samples;
        raw.seed = 7;
        raw.workers = workers;
        raw.format = format;
        const ExperimentSpec spec = validate_spec(raw);
        const ExperimentResult result = compute_experiment(spec);
        std::ostringstream stream;
        if (spec.format == OutputFormat::Csv) {
          write_csv(stream, result);
        } else {
          write_json(stream, result);
        }
        bytes[slot] += stream.str();
      }
      ++slot;
    }
    out.check(bytes[0] == bytes[1], fmt("%s: csv+json bytes identical for workers 1 vs 8 (%zu bytes)", c.preset,
                                        bytes[0].size()));
  }
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "MDG sandwich H_K <= MDG <= alpha H_K (n=1e5)", mdg_sandwich},
      {2, "per-draw SNR bounds for C-PAC (1e4 draws)", per_draw_bounds},
      {3, "reference MDG equals H_K (n=1e5)", reference_oracle},
      {4, "ratio and kappa MDG definitions agree (n=1e5)", definitions_agree},
      {5, "normalized throughput ordering at K=16,64,100 (n=1e5)", fig1_ordering},
      {6, "throughput / log2(ln K) band [0.90,1.25] and trend, K=1e3..1e6 (n=2000)", scaling_trend},
      {7, "analytic constants vs quadrature and 1e7-sample MC", analytic_constants},
      {8, "byte-identical output for 1 vs 8 workers", determinism},
  };

  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.check(false, std::string("exception: ") + e.what());
    }
    std::cout << (outcome.pass ? "PASS" : "FAIL") << "  AC" << c.id << "  " << c.title << "  ("
              << fmt("%.1f s", seconds_since(start)) << ")\n";
    for (const std::string& line : outcome.details) std::cout << "        " << line << '\n';
    std::cout.flush();
    failures += outcome.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all selected criteria passed" : fmt("%d criterion(s) failed", failures)) << '\n';
  return failures == 0 ? 0 : 1;
}
