// midsim: Monte Carlo experiments on multiuser (interference) diversity in
// spectrum-sharing cognitive radio networks.
//
//   midsim run --preset fig1 --samples 100000 --seed 7 --output fig1.csv
//   midsim run --preset theorem-suite --users 1,2,4,8,16,32,64,100
//   midsim run --config experiment.ini --workers 8   # keys under [run]

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mid/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Multiuser interference diversity simulator"};
  app.require_subcommand(1);

  mid::RawOptions raw;
  app.set_config("--config", "", "INI file with a [run] section mirroring the flags (flags take precedence)");
  CLI::App* run = app.add_subcommand("run", "Run an experiment preset and write CSV/JSON results");
  run->fallthrough();

  auto opt = [&](const std::string& name, auto& target, const std::string& help) {
    return run->add_option_function<std::string>(
        name, [&target](const std::string& v) { target = v; }, help);
  };
  auto list = [&](const std::string& name, auto& target, const std::string& help) {
    return run
        ->add_option_function<std::vector<std::string>>(
            name, [&target](const std::vector<std::string>& v) { target = CLI::detail::join(v, ","); }, help)
        ->delimiter(',');
  };
  opt("--preset", raw.preset, "fig1 | fig2 | theorem-suite | custom");
  opt("--quantity", raw.quantity,
      "custom preset only: throughput | normalized_throughput | mdg_ratio | mdg_kappa | asymptotic_ratio");
  run->add_option("--network", raw.networks, "mac | bc | pac | ref | ref-mac | ref-bc (repeatable)")
      ->delimiter(',');
  list("--users", raw.users, "Comma-separated list of user counts K");
  run->add_option_function<std::uint64_t>(
      "--samples", [&](const std::uint64_t& v) { raw.samples = v; }, "Monte Carlo samples per point");
  run->add_option_function<std::uint64_t>(
      "--seed", [&](const std::uint64_t& v) { raw.seed = v; }, "Master seed");
  opt("--workers", raw.workers, "Worker threads, or 'auto'");
  list("--power", raw.power, "CR transmit power P, or one value per user");
  run->add_option_function<double>(
      "--bs-power", [&](const double& v) { raw.bs_power = v; }, "CR base-station power J");
  run->add_option_function<double>(
      "--pr-power", [&](const double& v) { raw.pr_power = v; }, "PR transmit power Q");
  run->add_option_function<double>(
      "--interference-limit", [&](const double& v) { raw.interference_limit = v; },
      "Peak interference power Gamma at PR-Rx");
  opt("--output", raw.output, "Output file (default <preset>.<format>)");
  opt("--format", raw.format, "csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const mid::ExperimentSpec spec = mid::validate_spec(raw);
    return mid::run_experiment(spec, std::cerr);
  } catch (const mid::SpecError& e) {
    std::cerr << "midsim: invalid options: " << e.what() << '\n';
    return mid::kExitError;
  } catch (const std::exception& e) {
    std::cerr << "midsim: " << e.what() << '\n';
    return mid::kExitError;
  }
}
