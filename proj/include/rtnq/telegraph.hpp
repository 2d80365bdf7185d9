#pragma once

// Event-driven Monte-Carlo sampling of random telegraph noise B(t) in {+1, -1}
// and of its accumulated phase phi(tau) = int_0^tau B(s) ds.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rtnq/rates.hpp"

namespace rtnq {

/// Name recorded in run manifests.
inline constexpr std::string_view kRngAlgorithm = "splitmix64";

/// SplitMix64 (Steele, Lea & Flood, 2014). Every trajectory owns one stream seeded
/// from (seed, index), so trajectories can be generated in any order or partition.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() noexcept;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() noexcept;

  static std::uint64_t mix(std::uint64_t z) noexcept;

 private:
  std::uint64_t state_;
};

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept;

struct TrajectoryConfig {
  std::size_t n_trajectories = 100000;
  std::uint64_t seed = 0;
  double horizon = 1.0;

  /// Throws std::invalid_argument when n_trajectories == 0 or horizon is not positive.
  void validate() const;
};

/// One realization: initial level and the ordered switch times in (0, horizon).
class Trajectory {
 public:
  Trajectory(int initial_level, std::vector<double> switch_times, double horizon);

  int initial_level() const noexcept { return initial_level_; }
  std::span<const double> switch_times() const noexcept { return switch_times_; }
  double horizon() const noexcept { return horizon_; }

  int level_at(double t) const;
  /// Exact piecewise-linear integral of B over [0, tau]; throws RangeError beyond the horizon.
  double phase(double tau) const;
  /// Total time spent at level +1 within [0, horizon].
  double time_at_plus() const;

 private:
  int initial_level_;
  std::vector<double> switch_times_;
  double horizon_;
};

class TrajectoryEnsemble {
 public:
  TrajectoryEnsemble(SwitchingRates rates, TrajectoryConfig config, std::vector<Trajectory> trajectories);

  const SwitchingRates& rates() const noexcept { return rates_; }
  const TrajectoryConfig& config() const noexcept { return config_; }
  std::size_t size() const noexcept { return trajectories_.size(); }
  const Trajectory& operator[](std::size_t i) const { return trajectories_.at(i); }
  double phase(std::size_t i, double tau) const { return trajectories_.at(i).phase(tau); }

 private:
  SwitchingRates rates_;
  TrajectoryConfig config_;
  std::vector<Trajectory> trajectories_;
};

/// Trajectory `index` of the ensemble seeded with `seed`, simulated up to `horizon`.
/// The level +1 dwell time is exponential with rate gamma1, level -1 with rate gamma0;
/// the initial level is +1 or -1 with probability 1/2 each.
Trajectory sample_trajectory(const SwitchingRates& rates, double horizon, std::uint64_t seed, std::uint64_t index);

/// phi(tau) of trajectory `index` without storing switch times; identical to
/// sample_trajectory(rates, h, seed, index).phase(tau) for any h >= tau.
double sample_phase(const SwitchingRates& rates, double tau, std::uint64_t seed, std::uint64_t index);

TrajectoryEnsemble mc_sample(const SwitchingRates& rates, const TrajectoryConfig& config, unsigned threads = 1);

struct McEstimate {
  Complex estimate;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  std::size_t samples = 0;

  /// True when both components lie within k standard errors of `reference`.
  bool agrees_with(Complex reference, double k = 3.0) const;
};

/// Sample mean of exp(i n phi(tau)) over config.n_trajectories trajectories and the
/// standard error of each component. Throws RangeError when tau > config.horizon.
/// The result is bitwise independent of `threads`.
McEstimate mc_characteristic(double n, const SwitchingRates& rates, double tau, const TrajectoryConfig& config,
                             unsigned threads = 1);

}  // namespace rtnq
