#include "rtnq/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include "rtnq/characteristic.hpp"
#include "rtnq/cli/csv.hpp"
#include "rtnq/cli/manifest.hpp"
#include "rtnq/dynamics.hpp"
#include "rtnq/grid.hpp"
#include "rtnq/nonmarkov.hpp"
#include "rtnq/parallel.hpp"
#include "rtnq/telegraph.hpp"
#include "rtnq/teleport.hpp"

namespace fs = std::filesystem;

namespace rtnq::cli {
namespace {

// Invalid user configuration; `key` names the offending option.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

void require(bool condition, const std::string& key, const std::string& message) {
  if (!condition) throw ConfigError(key, message);
}

std::string number_list(const std::vector<double>& values) {
  std::string s = "[";
  for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + format_double(values[i]);
  return s + "]";
}

// 0.1 -> "0p1", 10 -> "10"
std::string file_tag(double value) {
  std::string s = fmt::format("{:g}", value);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

std::vector<double> time_axis(double horizon, double step) {
  const auto count = static_cast<std::size_t>(std::floor(horizon / step + 1e-9)) + 1;
  std::vector<double> t(count);
  for (std::size_t k = 0; k < count; ++k) t[k] = grid_point(0.0, step, k);
  return t;
}

struct Common {
  std::string out = "rtnq_out";
  std::uint64_t seed = 12345;
  unsigned threads = 0;
  double grid_step = 1e-2;
  double horizon = 20.0;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output directory")->capture_default_str();
  sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads, 0 = all cores")->capture_default_str();
  sub->add_option("--grid-step", c.grid_step, "Time-grid step")->capture_default_str();
  sub->add_option("--horizon", c.horizon, "Time-grid end")->capture_default_str();
}

void validate_common(const Common& c) {
  require(!c.out.empty(), "--out", "must not be empty");
  require(c.grid_step > 0.0 && std::isfinite(c.grid_step), "--grid-step", "must be positive");
  require(c.horizon >= c.grid_step && std::isfinite(c.horizon), "--horizon", "must be at least one grid step");
}

void add_common_config(ResolvedConfig& cfg, const Common& c) {
  cfg.add("out", c.out);
  cfg.add("seed", std::to_string(c.seed));
  cfg.add("grid-step", format_double(c.grid_step));
  cfg.add("horizon", format_double(c.horizon));
}

// Writes the resolved configuration, runs `body` (which appends output files) and the manifest.
int execute(const std::string& command, const Common& common, ResolvedConfig cfg, std::ostream& out,
            const std::function<void(const fs::path&, unsigned, std::vector<fs::path>&)>& body) {
  RunManifest manifest;
  manifest.started = std::chrono::system_clock::now();
  manifest.tool_version = kToolVersion;
  manifest.command = command;
  manifest.rng_algorithm = std::string(kRngAlgorithm);
  manifest.seed = common.seed;
  manifest.threads = resolve_threads(common.threads);

  const fs::path dir(common.out);
  fs::create_directories(dir);
  const fs::path config_file = "run_config.ini";
  {
    std::ofstream ini(dir / config_file, std::ios::binary | std::ios::trunc);
    ini << cfg.to_ini(command);
  }
  manifest.config = std::move(cfg);
  manifest.outputs.push_back(config_file);
  body(dir, manifest.threads, manifest.outputs);
  manifest.finished = std::chrono::system_clock::now();
  manifest.write_atomically(dir);
  for (const auto& f : manifest.outputs) out << (dir / f).string() << '\n';
  return kExitOk;
}

EnvironmentTopology parse_topology(const std::string& name) {
  if (name == "ie") return EnvironmentTopology::Independent;
  if (name == "ce") return EnvironmentTopology::Common;
  if (name == "single") return EnvironmentTopology::SingleQubit;
  throw ConfigError("--topology", "unknown topology '" + name + "' (ie, ce, single)");
}

// ---------------------------------------------------------------------------

struct LambdaOptions {
  Common common;
  double n = 2.0;
  double gamma0 = 1.0;
  double gamma1 = 3.0;
  bool balanced = false;
};

int cmd_lambda(const LambdaOptions& o, std::ostream& out) {
  validate_common(o.common);
  require(std::isfinite(o.n), "--n", "must be finite");
  require(o.gamma0 >= 0.0 && std::isfinite(o.gamma0), "--gamma0", "must be nonnegative");
  require(o.gamma1 >= 0.0 && std::isfinite(o.gamma1), "--gamma1", "must be nonnegative");
  require(o.gamma0 > 0.0 || o.gamma1 > 0.0, "--gamma1", "rates must not both be zero");
  require(!o.balanced || o.gamma0 == o.gamma1, "--balanced", "requires --gamma0 == --gamma1");

  ResolvedConfig cfg;
  add_common_config(cfg, o.common);
  cfg.add("n", format_double(o.n));
  cfg.add("gamma0", format_double(o.gamma0));
  cfg.add("gamma1", format_double(o.gamma1));
  cfg.add("balanced", o.balanced ? "true" : "false");

  return execute("lambda", o.common, cfg, out, [&](const fs::path& dir, unsigned, std::vector<fs::path>& files) {
    const SwitchingRates rates(o.gamma0, o.gamma1);
    const fs::path name = "lambda.csv";
    CsvWriter csv(dir / name, {"tau", "re_lambda", "im_lambda", "abs_lambda"});
    for (const double tau : time_axis(o.common.horizon, o.common.grid_step)) {
      const Complex l = o.balanced ? lambda_balanced(o.n, o.gamma0, tau) : lambda_unbalanced(o.n, rates, tau);
      csv.row({tau, l.real(), l.imag(), std::abs(l)});
    }
    csv.close();
    files.push_back(name);
  });
}

// ---------------------------------------------------------------------------

struct RateAxis {
  double min = 0.05;
  double max = 10.0;
  double step = 0.05;
};

void validate_axis(const RateAxis& a, const std::string& prefix) {
  require(a.min > 0.0 && std::isfinite(a.min), prefix + "-min", "must be positive");
  require(a.max >= a.min && std::isfinite(a.max), prefix + "-max", "must be >= " + prefix + "-min");
  require(a.step > 0.0 && std::isfinite(a.step), prefix + "-step", "must be positive");
}

void add_axis(CLI::App* sub, RateAxis& a, const std::string& prefix, const std::string& what) {
  sub->add_option(prefix + "-min", a.min, what + " axis start")->capture_default_str();
  sub->add_option(prefix + "-max", a.max, what + " axis end")->capture_default_str();
  sub->add_option(prefix + "-step", a.step, what + " axis step")->capture_default_str();
}

void add_axis_config(ResolvedConfig& cfg, const RateAxis& a, const std::string& prefix) {
  cfg.add(prefix + "-min", format_double(a.min));
  cfg.add(prefix + "-max", format_double(a.max));
  cfg.add(prefix + "-step", format_double(a.step));
}

struct NegativityOptions {
  Common common;
  std::vector<std::string> topologies{"ie", "ce"};
  std::vector<double> gamma0{0.1, 1.0, 10.0};
  RateAxis gamma1;
};

int cmd_negativity(const NegativityOptions& o, std::ostream& out) {
  validate_common(o.common);
  validate_axis(o.gamma1, "--gamma1");
  require(!o.gamma0.empty(), "--gamma0", "needs at least one value");
  for (const double g : o.gamma0) require(g > 0.0 && std::isfinite(g), "--gamma0", "values must be positive");
  require(!o.topologies.empty(), "--topology", "needs at least one value");
  std::vector<EnvironmentTopology> topologies;
  for (const auto& t : o.topologies) topologies.push_back(parse_topology(t));

  ResolvedConfig cfg;
  add_common_config(cfg, o.common);
  std::string topo_list = "[";
  for (std::size_t i = 0; i < o.topologies.size(); ++i) topo_list += (i ? "," : "") + o.topologies[i];
  cfg.add("topology", topo_list + "]");
  cfg.add("gamma0", number_list(o.gamma0));
  add_axis_config(cfg, o.gamma1, "gamma1");

  return execute("negativity", o.common, cfg, out, [&](const fs::path& dir, unsigned threads,
                                                       std::vector<fs::path>& files) {
    const auto taus = time_axis(o.common.horizon, o.common.grid_step);
    const auto gamma1 = rate_axis(o.gamma1.min, o.gamma1.max, o.gamma1.step);
    for (std::size_t t = 0; t < topologies.size(); ++t) {
      for (const double g0 : o.gamma0) {
        // Rows are computed per gamma1 in parallel and written in order.
        std::vector<std::vector<double>> values(gamma1.size());
        parallel_for(gamma1.size(), threads, [&](std::size_t i) {
          const SwitchingRates rates(g0, gamma1[i]);
          values[i].resize(taus.size());
          for (std::size_t k = 0; k < taus.size(); ++k) {
            values[i][k] = negativity_bell_closed_form(topologies[t], rates, taus[k]);
          }
        });
        const fs::path name = "fig1_" + o.topologies[t] + "_g" + file_tag(g0) + ".csv";
        CsvWriter csv(dir / name, {"tau", "gamma1", "negativity"});
        for (std::size_t i = 0; i < gamma1.size(); ++i)
          for (std::size_t k = 0; k < taus.size(); ++k) csv.row({taus[k], gamma1[i], values[i][k]});
        csv.close();
        files.push_back(name);
      }
    }
  });
}

// ---------------------------------------------------------------------------

struct RevivalOptions {
  Common common;
  RateAxis rates;
  double rel_threshold = 1e-6;
};

int cmd_revivals(const RevivalOptions& o, std::ostream& out) {
  validate_common(o.common);
  validate_axis(o.rates, "--rate");
  require(o.rel_threshold > 0.0, "--rel-threshold", "must be positive");

  ResolvedConfig cfg;
  add_common_config(cfg, o.common);
  add_axis_config(cfg, o.rates, "rate");
  cfg.add("rel-threshold", format_double(o.rel_threshold));

  return execute("revivals", o.common, cfg, out, [&](const fs::path& dir, unsigned threads,
                                                     std::vector<fs::path>& files) {
    RevivalGridSpec spec;
    spec.gamma0_min = spec.gamma1_min = o.rates.min;
    spec.gamma0_max = spec.gamma1_max = o.rates.max;
    spec.gamma0_step = spec.gamma1_step = o.rates.step;
    spec.horizon = o.common.horizon;
    spec.time_step = o.common.grid_step;
    spec.rel_threshold = o.rel_threshold;
    const RevivalMap ie = revival_scan(EnvironmentTopology::Independent, spec, threads);
    const RevivalMap ce = revival_scan(EnvironmentTopology::Common, spec, threads);
    const fs::path name = "fig2_revivals.csv";
    CsvWriter csv(dir / name, {"gamma0", "gamma1", "ie", "ce"});
    for (std::size_t i = 0; i < ie.rows(); ++i)
      for (std::size_t j = 0; j < ie.cols(); ++j)
        csv.row({spec.gamma0_at(i), spec.gamma1_at(j), ie.at(i, j) ? 1.0 : 0.0, ce.at(i, j) ? 1.0 : 0.0});
    csv.close();
    files.push_back(name);
  });
}

// ---------------------------------------------------------------------------

struct NonMarkovOptions {
  Common common{.grid_step = 1e-3, .horizon = 10.0};
  RateAxis rates;
};

int cmd_nonmarkov(const NonMarkovOptions& o, std::ostream& out) {
  validate_common(o.common);
  validate_axis(o.rates, "--rate");

  ResolvedConfig cfg;
  add_common_config(cfg, o.common);
  add_axis_config(cfg, o.rates, "rate");

  return execute("nonmarkov", o.common, cfg, out, [&](const fs::path& dir, unsigned threads,
                                                      std::vector<fs::path>& files) {
    const auto axis = rate_axis(o.rates.min, o.rates.max, o.rates.step);
    const NMSurface surface = nm_surface(axis, axis, TimeGrid{o.common.horizon, o.common.grid_step}, threads);
    const fs::path name = "fig3_nm.csv";
    CsvWriter csv(dir / name, {"gamma0", "gamma1", "nm"});
    for (std::size_t i = 0; i < axis.size(); ++i)
      for (std::size_t j = 0; j < axis.size(); ++j) csv.row({axis[i], axis[j], surface.at(i, j)});
    csv.close();
    files.push_back(name);
  });
}

// ---------------------------------------------------------------------------

struct TeleportOptions {
  Common common;
  std::vector<double> gamma0{0.1, 1.0, 10.0, 30.0};
  RateAxis gamma1;
  bool two_sided = false;
};

int cmd_teleport(const TeleportOptions& o, std::ostream& out) {
  validate_common(o.common);
  validate_axis(o.gamma1, "--gamma1");
  require(!o.gamma0.empty(), "--gamma0", "needs at least one value");
  for (const double g : o.gamma0) require(g > 0.0 && std::isfinite(g), "--gamma0", "values must be positive");

  ResolvedConfig cfg;
  add_common_config(cfg, o.common);
  cfg.add("gamma0", number_list(o.gamma0));
  add_axis_config(cfg, o.gamma1, "gamma1");
  cfg.add("two-sided", o.two_sided ? "true" : "false");

  return execute("teleport", o.common, cfg, out, [&](const fs::path& dir, unsigned threads,
                                                     std::vector<fs::path>& files) {
    const TeleportNoise noise = o.two_sided ? TeleportNoise::TwoSided : TeleportNoise::OneSided;
    const auto taus = time_axis(o.common.horizon, o.common.grid_step);
    for (const double g0 : o.gamma0) {
      // The gamma1 axis always reaches the balanced reference line gamma1 = gamma0.
      AdvantageGridSpec spec;
      spec.gamma1_min = o.gamma1.min;
      spec.gamma1_max = std::max(o.gamma1.max, g0);
      spec.gamma1_step = o.gamma1.step;
      spec.tau_min = 0.0;
      spec.tau_max = o.common.horizon;
      spec.tau_step = o.common.grid_step;

      const fs::path fav_name = "fig4_fav_g" + file_tag(g0) + ".csv";
      CsvWriter fav(dir / fav_name, {"tau", "gamma1", "fav"});
      for (std::size_t i = 0; i < spec.gamma1_count(); ++i) {
        const SwitchingRates rates(g0, spec.gamma1_at(i));
        for (const double tau : taus) fav.row({tau, rates.gamma1(), average_fidelity(rates, tau, noise).value});
      }
      fav.close();
      files.push_back(fav_name);

      const AdvantageMap map = fidelity_advantage_region(g0, spec, noise, threads);
      const fs::path adv_name = "fig4_adv_g" + file_tag(g0) + ".csv";
      CsvWriter adv(dir / adv_name, {"tau", "gamma1", "advantage"});
      for (std::size_t i = 0; i < map.rows(); ++i)
        for (std::size_t j = 0; j < map.cols(); ++j)
          adv.row({spec.tau_at(j), spec.gamma1_at(i), map.at(i, j) ? 1.0 : 0.0});
      adv.close();
      files.push_back(adv_name);
    }
  });
}

// ---------------------------------------------------------------------------

struct ValidateCli {
  Common common;
  ValidateOptions options;
};

int cmd_validate(const ValidateCli& o, std::ostream& out) {
  require(!o.common.out.empty(), "--out", "must not be empty");
  require(o.options.mc_draws >= 1, "--draws", "must be at least 1");
  require(o.options.trajectories >= 2, "--trajectories", "must be at least 2");
  require(std::isfinite(o.options.lambda_offset), "--inject-lambda-offset", "must be finite");

  ResolvedConfig cfg;
  cfg.add("out", o.common.out);
  cfg.add("seed", std::to_string(o.common.seed));
  cfg.add("draws", std::to_string(o.options.mc_draws));
  cfg.add("negativity-draws", std::to_string(o.options.negativity_draws));
  cfg.add("teleport-draws", std::to_string(o.options.teleport_draws));
  cfg.add("trajectories", std::to_string(o.options.trajectories));
  if (o.options.lambda_offset != 0.0) cfg.add("inject-lambda-offset", format_double(o.options.lambda_offset));

  bool passed = true;
  execute("validate", o.common, cfg, out, [&](const fs::path& dir, unsigned threads, std::vector<fs::path>& files) {
    ValidateOptions options = o.options;
    options.seed = o.common.seed;
    options.threads = threads;
    const ValidationReport report = run_validation(options);
    const fs::path name = "validate_report.csv";
    std::ofstream file(dir / name, std::ios::binary | std::ios::trunc);
    file << report.csv;
    file.close();
    files.push_back(name);
    passed = report.passed();
    for (const auto& s : report.summaries) {
      out << fmt::format("{:<18} {:>4}/{:<4} (need {:>4}) {}\n", s.name, s.passed, s.total, s.required,
                         s.ok() ? "PASS" : "FAIL");
    }
  });
  return passed ? kExitOk : kExitValidationFailure;
}

}  // namespace

// ---------------------------------------------------------------------------

bool ValidationReport::passed() const {
  return std::all_of(summaries.begin(), summaries.end(), [](const CheckSummary& s) { return s.ok(); });
}

ValidationReport run_validation(const ValidateOptions& o) {
  ValidationReport report;
  std::string& csv = report.csv;
  csv = "check,case,parameters,statistic,threshold,pass\n";
  const auto emit = [&](const std::string& check, std::size_t index, const std::string& params, double statistic,
                        double threshold, bool pass) {
    csv += fmt::format("{},{},{},{},{},{}\n", check, index, params, format_double(statistic),
                       format_double(threshold), pass ? 1 : 0);
  };
  const auto summarize = [&](std::string name, std::size_t passed, std::size_t total, std::size_t required) {
    csv += fmt::format("summary,{},passed={}/{},{},{},{}\n", name, passed, total, passed, required,
                       passed >= required ? 1 : 0);
    report.summaries.push_back({std::move(name), passed, total, required});
  };
  SplitMix64 draws(substream_seed(o.seed, 0x5eed'd4a3ULL));
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * draws.uniform(); };
  const Complex offset(o.lambda_offset, 0.0);

  // Closed form versus Monte-Carlo trajectories.
  {
    std::size_t passed = 0;
    for (std::size_t d = 0; d < o.mc_draws; ++d) {
      const double n = draws.uniform() < 0.5 ? 2.0 : 4.0;
      const double g0 = uniform(0.1, 10.0);
      const double g1 = uniform(0.1, 10.0);
      const double tau = uniform(0.1, 5.0);
      const SwitchingRates rates(g0, g1);
      const TrajectoryConfig config{o.trajectories, substream_seed(o.seed, d), tau};
      const McEstimate mc = mc_characteristic(n, rates, tau, config, o.threads);
      const Complex analytic = lambda_unbalanced(n, rates, tau) + offset;
      const auto z = [](double diff, double se) {
        if (diff == 0.0) return 0.0;
        return se > 0.0 ? std::abs(diff) / se : std::numeric_limits<double>::infinity();
      };
      const double stat = std::max(z(mc.estimate.real() - analytic.real(), mc.std_error_re),
                                   z(mc.estimate.imag() - analytic.imag(), mc.std_error_im));
      const bool pass = stat <= 3.0;
      passed += pass;
      emit("noise_mc", d,
           fmt::format("n={};gamma0={};gamma1={};tau={}", format_double(n), format_double(g0), format_double(g1),
                       format_double(tau)),
           stat, 3.0, pass);
    }
    const auto required = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(o.mc_draws)));
    summarize("noise_mc", passed, o.mc_draws, required);
  }

  // Closed-form Bell negativity versus eigen-decomposition of the evolved state.
  {
    std::size_t passed = 0;
    for (std::size_t d = 0; d < o.negativity_draws; ++d) {
      const SwitchingRates rates(uniform(0.05, 10.0), uniform(0.05, 10.0));
      const double tau = uniform(0.0, 20.0);
      const Complex l2 = lambda_unbalanced(2.0, rates, tau) + offset;
      const Complex l4 = lambda_unbalanced(4.0, rates, tau) + offset;
      const BellMixture bell = BellMixture::pure(0);
      const double ie = std::abs(negativity(evolve_state(bell, EnvironmentTopology::Independent, rates, tau)) -
                                 std::norm(l2));
      const double ce = std::abs(negativity(evolve_state(bell, EnvironmentTopology::Common, rates, tau)) -
                                 std::abs(l4));
      const double sq = std::abs(negativity(evolve_state(bell, EnvironmentTopology::SingleQubit, rates, tau)) -
                                 std::abs(l2));
      const double stat = std::max({ie, ce, sq});
      const bool pass = stat <= 1e-10;
      passed += pass;
      emit("negativity", d,
           fmt::format("gamma0={};gamma1={};tau={}", format_double(rates.gamma0()), format_double(rates.gamma1()),
                       format_double(tau)),
           stat, 1e-10, pass);
    }
    summarize("negativity", passed, o.negativity_draws, o.negativity_draws);
  }

  // Three-qubit protocol oracle versus the closed-form fidelities.
  {
    std::size_t passed_point = 0;
    std::size_t passed_average = 0;
    boost::math::quadrature::gauss<double, 8> legendre;
    constexpr int kAzimuth = 8;
    for (std::size_t d = 0; d < o.teleport_draws; ++d) {
      const InputPureState input{uniform(0.0, std::numbers::pi), uniform(0.0, 2.0 * std::numbers::pi)};
      const SwitchingRates rates(uniform(0.05, 10.0), uniform(0.05, 10.0));
      const double tau = uniform(0.0, 10.0);
      const Complex l2 = lambda_unbalanced(2.0, rates, tau) + offset;
      const std::string params =
          fmt::format("theta={};phi={};gamma0={};gamma1={};tau={}", format_double(input.theta),
                      format_double(input.phi), format_double(rates.gamma0()), format_double(rates.gamma1()),
                      format_double(tau));

      const double oracle = fidelity(input, teleport_protocol_oracle(input, rates, tau));
      const double point_stat = std::abs(oracle - teleport_fidelity_closed_form(input.theta, l2));
      const bool point_pass = point_stat <= 1e-10;
      passed_point += point_pass;
      emit("teleport_fidelity", d, params, point_stat, 1e-10, point_pass);

      // (1/4pi) int dOmega F = (1/2) int_{-1}^{1} d(cos theta) (1/2pi) int dphi F
      const double sphere = 0.5 * legendre.integrate(
                                      [&](double c) {
                                        const double theta = std::acos(std::clamp(c, -1.0, 1.0));
                                        double sum = 0.0;
                                        for (int a = 0; a < kAzimuth; ++a) {
                                          const InputPureState s{theta, 2.0 * std::numbers::pi * a / kAzimuth};
                                          sum += fidelity(s, teleport_protocol_oracle(s, rates, tau));
                                        }
                                        return sum / kAzimuth;
                                      },
                                      -1.0, 1.0);
      const double average_stat = std::abs(sphere - (2.0 + l2.real()) / 3.0);
      const bool average_pass = average_stat <= 1e-8;
      passed_average += average_pass;
      emit("teleport_average", d, params, average_stat, 1e-8, average_pass);
    }
    summarize("teleport_fidelity", passed_point, o.teleport_draws, o.teleport_draws);
    summarize("teleport_average", passed_average, o.teleport_draws, o.teleport_draws);
  }
  return report;
}

// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Qubit dephasing under random telegraph noise: figure data and validation", "rtnq"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  // Lives on the root so that a [command] section maps onto that subcommand's options.
  app.set_config("--config", "", "INI file with a section named after the command; flags override it");
  app.fallthrough();

  LambdaOptions lambda;
  auto* lambda_cmd = app.add_subcommand("lambda", "Characteristic function Lambda_n(tau) on a time grid");
  add_common(lambda_cmd, lambda.common);
  lambda_cmd->add_option("--n", lambda.n, "Order n of E[exp(i n phi)]")->capture_default_str();
  lambda_cmd->add_option("--gamma0", lambda.gamma0, "Switching rate gamma0")->capture_default_str();
  lambda_cmd->add_option("--gamma1", lambda.gamma1, "Switching rate gamma1")->capture_default_str();
  lambda_cmd->add_flag("--balanced", lambda.balanced, "Use the balanced formula (needs equal rates)");

  NegativityOptions neg;
  auto* neg_cmd = app.add_subcommand("negativity", "Bell-pair negativity N(tau, gamma1) per gamma0 preset");
  add_common(neg_cmd, neg.common);
  neg_cmd->add_option("--topology", neg.topologies, "ie, ce and/or single")->capture_default_str();
  neg_cmd->add_option("--gamma0", neg.gamma0, "gamma0 presets")->capture_default_str();
  add_axis(neg_cmd, neg.gamma1, "--gamma1", "gamma1");

  RevivalOptions rev;
  auto* rev_cmd = app.add_subcommand("revivals", "Entanglement-revival regions over (gamma0, gamma1)");
  add_common(rev_cmd, rev.common);
  add_axis(rev_cmd, rev.rates, "--rate", "Rate");
  rev_cmd->add_option("--rel-threshold", rev.rel_threshold, "Relative rise that counts as a revival")
      ->capture_default_str();

  NonMarkovOptions nm;
  auto* nm_cmd = app.add_subcommand("nonmarkov", "BLP non-Markovianity surface over (gamma0, gamma1)");
  add_common(nm_cmd, nm.common);
  add_axis(nm_cmd, nm.rates, "--rate", "Rate");

  TeleportOptions tel;
  auto* tel_cmd = app.add_subcommand("teleport", "Average teleportation fidelity and advantage regions");
  add_common(tel_cmd, tel.common);
  tel_cmd->add_option("--gamma0", tel.gamma0, "gamma0 presets")->capture_default_str();
  add_axis(tel_cmd, tel.gamma1, "--gamma1", "gamma1");
  tel_cmd->add_flag("--two-sided", tel.two_sided, "Noise on both resource qubits");

  ValidateCli val;
  auto* val_cmd = app.add_subcommand("validate", "Closed forms versus independent numerical routes");
  add_common(val_cmd, val.common);
  val_cmd->add_option("--draws", val.options.mc_draws, "Monte-Carlo parameter draws")->capture_default_str();
  val_cmd->add_option("--negativity-draws", val.options.negativity_draws, "Negativity draws")
      ->capture_default_str();
  val_cmd->add_option("--teleport-draws", val.options.teleport_draws, "Teleportation draws")
      ->capture_default_str();
  val_cmd->add_option("--trajectories", val.options.trajectories, "Trajectories per draw")->capture_default_str();
  val_cmd->add_option("--inject-lambda-offset", val.options.lambda_offset)->group("");

  std::vector<std::string> argv_storage{"rtnq"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }

  try {
    if (lambda_cmd->parsed()) return cmd_lambda(lambda, out);
    if (neg_cmd->parsed()) return cmd_negativity(neg, out);
    if (rev_cmd->parsed()) return cmd_revivals(rev, out);
    if (nm_cmd->parsed()) return cmd_nonmarkov(nm, out);
    if (tel_cmd->parsed()) return cmd_teleport(tel, out);
    if (val_cmd->parsed()) return cmd_validate(val, out);
  } catch (const ConfigError& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::invalid_argument& e) {
    err << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  return kExitInvalidConfig;
}

}  // namespace rtnq::cli
