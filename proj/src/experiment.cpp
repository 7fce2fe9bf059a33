#include "mid/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mid/analysis.hpp"
#include "mid/errors.hpp"

namespace mid {

std::string preset_name(Preset p) {
  switch (p) {
    case Preset::Fig1:
      return "fig1";
    case Preset::Fig2:
      return "fig2";
    case Preset::TheoremSuite:
      return "theorem-suite";
    case Preset::Custom:
      return "custom";
  }
  return "custom";
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, sep)) {
    const auto begin = item.find_first_not_of(" \t");
    const auto end = item.find_last_not_of(" \t");
    parts.push_back(begin == std::string::npos ? std::string() : item.substr(begin, end - begin + 1));
  }
  return parts;
}

template <class T>
std::optional<T> parse_number(const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

Preset parse_preset(const std::string& name) {
  if (name == "fig1") return Preset::Fig1;
  if (name == "fig2") return Preset::Fig2;
  if (name == "theorem-suite") return Preset::TheoremSuite;
  if (name == "custom") return Preset::Custom;
  throw SpecError("--preset: unknown preset '" + name + "' (expected fig1, fig2, theorem-suite, custom)");
}

std::vector<std::size_t> parse_users(const std::string& text) {
  std::vector<std::size_t> users;
  for (const std::string& item : split(text, ',')) {
    // accept 1e6-style shorthands for the large presets
    std::optional<std::size_t> k = parse_number<std::size_t>(item);
    if (!k) {
      const std::optional<double> d = parse_number<double>(item);
      if (d && *d >= 0.0 && *d < 1e15 && std::floor(*d) == *d) k = static_cast<std::size_t>(*d);
    }
    if (!k) throw SpecError("--users: '" + item + "' is not a positive integer");
    if (*k == 0) throw SpecError("--users: number of users K must be >= 1");
    users.push_back(*k);
  }
  if (users.empty()) throw SpecError("--users: empty list");
  std::sort(users.begin(), users.end());
  users.erase(std::unique(users.begin(), users.end()), users.end());
  return users;
}

double positive(std::optional<double> value, double fallback, const char* flag) {
  const double v = value.value_or(fallback);
  if (!std::isfinite(v) || v <= 0.0) throw SpecError(std::string(flag) + ": must be a finite value > 0");
  return v;
}

std::vector<std::size_t> default_users(Preset preset) {
  switch (preset) {
    case Preset::Fig1:
      return {1, 2, 3, 4, 5, 6, 8, 10, 15, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    case Preset::Fig2:
      return {1'000, 10'000, 100'000, 1'000'000};
    case Preset::TheoremSuite:
      return {1, 2, 4, 8, 16, 32, 64, 100};
    case Preset::Custom:
      break;
  }
  return {};
}

std::uint64_t default_samples(Preset preset) {
  switch (preset) {
    case Preset::Fig1:
    case Preset::TheoremSuite:
      return 100'000;
    case Preset::Fig2:
      return 2'000;
    case Preset::Custom:
      break;
  }
  return 10'000;
}

std::optional<Quantity> preset_quantity(Preset preset) {
  switch (preset) {
    case Preset::Fig1:
      return Quantity::NormalizedThroughput;
    case Preset::Fig2:
      return Quantity::Throughput;
    case Preset::TheoremSuite:
      return Quantity::MdgRatio;
    case Preset::Custom:
      break;
  }
  return std::nullopt;
}

std::vector<NetworkKind> default_networks(Preset preset) {
  if (preset == Preset::TheoremSuite) return {NetworkKind::mac(), NetworkKind::bc(), NetworkKind::pac()};
  return {NetworkKind::mac(), NetworkKind::bc(), NetworkKind::pac(), NetworkKind::reference()};
}

bool is_mdg(Quantity q) { return q == Quantity::MdgRatio || q == Quantity::MdgKappa; }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

NetworkConfig ExperimentSpec::network_config(const NetworkKind& network) const {
  NetworkConfig config;
  config.kind = network;
  config.users = users.empty() ? 1 : users.back();
  config.per_user_power = user_power;
  config.bs_power = bs_power;
  config.pr_power = pr_power;
  config.interference_limit = interference_limit;
  return config;
}

ExperimentSpec validate_spec(const RawOptions& raw) {
  ExperimentSpec spec;
  spec.preset = raw.preset ? parse_preset(*raw.preset) : Preset::Custom;
  const std::string preset_flag = "--preset " + preset_name(spec.preset);

  const std::optional<Quantity> fixed = preset_quantity(spec.preset);
  if (raw.quantity) {
    Quantity requested{};
    try {
      requested = parse_quantity(*raw.quantity);
    } catch (const ConfigError& err) {
      throw SpecError(std::string("--quantity: ") + err.what());
    }
    if (fixed && requested != *fixed) {
      throw SpecError("--quantity " + *raw.quantity + " conflicts with " + preset_flag + " (which fixes " +
                      quantity_name(*fixed) + ")");
    }
    spec.quantity = requested;
  } else {
    spec.quantity = fixed.value_or(Quantity::Throughput);
  }

  if (raw.networks.empty()) {
    spec.networks = default_networks(spec.preset);
  } else {
    for (const std::string& entry : raw.networks) {
      for (const std::string& name : split(entry, ',')) {
        try {
          const NetworkKind kind = NetworkKind::parse(name);
          if (std::find(spec.networks.begin(), spec.networks.end(), kind) == spec.networks.end()) {
            spec.networks.push_back(kind);
          }
        } catch (const ConfigError& err) {
          throw SpecError(std::string("--network: ") + err.what());
        }
      }
    }
  }

  if (raw.users) {
    spec.users = parse_users(*raw.users);
  } else if (spec.preset == Preset::Custom) {
    throw SpecError("--users is required with " + preset_flag);
  } else {
    spec.users = default_users(spec.preset);
  }
  if (spec.preset == Preset::Fig1 && spec.users.back() > 100) {
    throw SpecError("--users " + *raw.users + " conflicts with " + preset_flag + " (K must lie in [1, 100])");
  }
  if (spec.preset == Preset::Fig2) {
    const std::set<std::size_t> allowed{1'000, 10'000, 100'000, 1'000'000};
    for (std::size_t k : spec.users) {
      if (!allowed.contains(k)) {
        throw SpecError("--users " + *raw.users + " conflicts with " + preset_flag +
                        " (K must be one of 1000, 10000, 100000, 1000000)");
      }
    }
  }
  if (spec.quantity == Quantity::AsymptoticRatio && spec.users.front() < 3) {
    throw SpecError("--users: asymptotic_ratio needs K >= 3");
  }
  if (spec.users.back() > 0xFFFFFFFFull) {
    throw SpecError("--users: K exceeds 2^32 - 1");
  }

  spec.n_samples = raw.samples.value_or(default_samples(spec.preset));
  if (spec.n_samples < 2) throw SpecError("--samples: need at least 2 samples");
  spec.seed = raw.seed.value_or(1);

  if (!raw.workers || *raw.workers == "auto") {
    spec.workers = 0;
  } else {
    const std::optional<unsigned> w = parse_number<unsigned>(*raw.workers);
    if (!w || *w == 0) throw SpecError("--workers: expected a positive integer or 'auto'");
    spec.workers = *w;
  }

  if (raw.power) {
    spec.user_power.clear();
    for (const std::string& item : split(*raw.power, ',')) {
      const std::optional<double> p = parse_number<double>(item);
      if (!p || !std::isfinite(*p) || *p <= 0.0) throw SpecError("--power: '" + item + "' is not a value > 0");
      spec.user_power.push_back(*p);
    }
    if (spec.user_power.size() != 1 && spec.user_power.size() != spec.users.back()) {
      throw SpecError("--power: give one value or exactly max(--users) = " + std::to_string(spec.users.back()) +
                      " values");
    }
    const bool symmetric = std::all_of(spec.user_power.begin(), spec.user_power.end(),
                                       [&](double p) { return p == spec.user_power.front(); });
    if (!symmetric && (is_mdg(spec.quantity) || spec.preset == Preset::TheoremSuite)) {
      throw SpecError("--power: asymmetric powers are not allowed for " + quantity_name(spec.quantity) +
                      " (multiuser diversity gain needs symmetric users)");
    }
  }
  spec.bs_power = positive(raw.bs_power, 1.0, "--bs-power");
  spec.pr_power = positive(raw.pr_power, 1.0, "--pr-power");
  spec.interference_limit = positive(raw.interference_limit, 1.0, "--interference-limit");

  if (!raw.format || *raw.format == "csv") {
    spec.format = OutputFormat::Csv;
  } else if (*raw.format == "json") {
    spec.format = OutputFormat::Json;
  } else {
    throw SpecError("--format: expected csv or json, got '" + *raw.format + "'");
  }
  spec.output_path = raw.output ? std::filesystem::path(*raw.output)
                                : std::filesystem::path(preset_name(spec.preset) +
                                                        (spec.format == OutputFormat::Csv ? ".csv" : ".json"));
  if (spec.output_path.empty()) throw SpecError("--output: empty path");
  return spec;
}

bool ResultRow::violates_bounds() const {
  if (!bounds) return false;
  const double slack = 3.0 * point.value.std_error;
  return point.value.mean < bounds->lower - slack || point.value.mean > bounds->upper + slack;
}

ExperimentResult compute_experiment(const ExperimentSpec& spec, std::ostream* log) {
  ExperimentResult result;
  result.with_bounds = spec.preset == Preset::TheoremSuite;
  const RngSpec rng{spec.seed};

  for (const NetworkKind& network : spec.networks) {
    const auto started = std::chrono::steady_clock::now();
    const NetworkConfig config = spec.network_config(network);
    std::vector<Estimate> values;
    switch (spec.quantity) {
      case Quantity::Throughput:
        values = throughput_curve(config, spec.users, spec.n_samples, rng, spec.workers);
        break;
      case Quantity::NormalizedThroughput:
        values = normalized_throughput(config, spec.users, spec.n_samples, rng, spec.workers);
        break;
      case Quantity::MdgRatio:
        values = mdg_ratio_curve(config, spec.users, spec.n_samples, rng, spec.workers);
        break;
      case Quantity::MdgKappa:
        values = mdg_kappa_curve(config, spec.users, spec.n_samples, rng, spec.workers);
        break;
      case Quantity::AsymptoticRatio:
        values = asymptotic_ratio_curve(config, spec.users, spec.n_samples, rng, spec.workers);
        break;
    }
    std::optional<BoundConstants> constants;
    if (result.with_bounds) constants = bound_constants(config);

    for (std::size_t c = 0; c < spec.users.size(); ++c) {
      ResultRow row{{spec.users[c], values[c], spec.quantity, network}, spec.seed, std::nullopt};
      if (constants) {
        const double h = reference_mdg_exact(spec.users[c]);
        const double alpha = constants->alpha_for(network);
        row.bounds = TheoremBounds{h, alpha * h, alpha};
      }
      result.rows.push_back(row);
    }
    if (log) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
      *log << "midsim: " << network.name() << ' ' << quantity_name(spec.quantity) << " K=" << spec.users.front()
           << ".." << spec.users.back() << " (" << spec.users.size() << " points, n=" << spec.n_samples << ") in "
           << elapsed.count() << " s\n";
    }
  }
  return result;
}

void write_csv(std::ostream& out, const ExperimentResult& result) {
  out << "network,K,quantity,mean,std_error,n_samples,seed";
  if (result.with_bounds) out << ",lower_bound,upper_bound,alpha";
  out << '\n';
  for (const ResultRow& row : result.rows) {
    const CurvePoint& p = row.point;
    out << p.network.name() << ',' << p.users << ',' << quantity_name(p.quantity) << ','
        << format_double(p.value.mean) << ',' << format_double(p.value.std_error) << ',' << p.value.n_samples << ','
        << row.seed;
    if (result.with_bounds) {
      const TheoremBounds b = row.bounds.value_or(TheoremBounds{});
      out << ',' << format_double(b.lower) << ',' << format_double(b.upper) << ',' << format_double(b.alpha);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const ExperimentResult& result) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const ResultRow& row : result.rows) {
    const CurvePoint& p = row.point;
    nlohmann::ordered_json item{{"network", p.network.name()},
                                {"K", p.users},
                                {"quantity", quantity_name(p.quantity)},
                                {"mean", p.value.mean},
                                {"std_error", p.value.std_error},
                                {"n_samples", p.value.n_samples},
                                {"seed", row.seed}};
    if (result.with_bounds && row.bounds) {
      item["lower_bound"] = row.bounds->lower;
      item["upper_bound"] = row.bounds->upper;
      item["alpha"] = row.bounds->alpha;
    }
    rows.push_back(std::move(item));
  }
  out << rows.dump(2) << '\n';
}

int run_experiment(const ExperimentSpec& spec, std::ostream& diag) {
  std::ofstream file(spec.output_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    diag << "midsim: cannot open output file '" << spec.output_path.string() << "' for writing\n";
    return kExitError;
  }
  const ExperimentResult result = compute_experiment(spec, &diag);
  if (spec.format == OutputFormat::Csv) {
    write_csv(file, result);
  } else {
    write_json(file, result);
  }
  file.flush();
  if (!file) {
    diag << "midsim: failed while writing '" << spec.output_path.string() << "'\n";
    return kExitError;
  }

  int status = kExitOk;
  for (const ResultRow& row : result.rows) {
    if (row.violates_bounds()) {
      diag << "midsim: " << row.point.network.name() << " K=" << row.point.users << " MDG "
           << format_double(row.point.value.mean) << " leaves [" << format_double(row.bounds->lower) << ", "
           << format_double(row.bounds->upper) << "] by more than 3 SE\n";
      status = kExitBoundViolation;
    }
  }
  return status;
}

}  // namespace mid
