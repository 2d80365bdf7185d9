#include "rtnq/telegraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rtnq/errors.hpp"
#include "rtnq/parallel.hpp"

namespace rtnq {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::size_t kBlockSize = 4096;

struct Walk {
  int initial;
  int final;
};

// Walks one trajectory up to `horizon`, calling on_switch(t, level) for each switch
// time t, where `level` is the level held just before the switch.
template <class OnSwitch>
Walk walk(const SwitchingRates& rates, double horizon, std::uint64_t seed, std::uint64_t index,
         OnSwitch&& on_switch) {
  SplitMix64 rng(substream_seed(seed, index));
  const int initial = (rng.next() >> 63) != 0 ? +1 : -1;
  int level = initial;
  double t = 0.0;
  for (;;) {
    const double rate = level > 0 ? rates.gamma1() : rates.gamma0();
    if (rate == 0.0) break;
    t += -std::log1p(-rng.uniform()) / rate;
    if (t >= horizon) break;
    on_switch(t, level);
    level = -level;
  }
  return {initial, level};
}

// Running mean and sum of squared deviations, merged in a fixed order.
struct Moments {
  double count = 0.0;
  double mean_re = 0.0;
  double m2_re = 0.0;
  double mean_im = 0.0;
  double m2_im = 0.0;

  void add(Complex x) {
    count += 1.0;
    const double d_re = x.real() - mean_re;
    mean_re += d_re / count;
    m2_re += d_re * (x.real() - mean_re);
    const double d_im = x.imag() - mean_im;
    mean_im += d_im / count;
    m2_im += d_im * (x.imag() - mean_im);
  }

  void merge(const Moments& other) {
    if (other.count == 0.0) return;
    const double total = count + other.count;
    const double d_re = other.mean_re - mean_re;
    const double d_im = other.mean_im - mean_im;
    mean_re += d_re * other.count / total;
    mean_im += d_im * other.count / total;
    m2_re += other.m2_re + d_re * d_re * count * other.count / total;
    m2_im += other.m2_im + d_im * d_im * count * other.count / total;
    count = total;
  }
};

}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() noexcept {
  state_ += kGolden;
  return mix(state_);
}

double SplitMix64::uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return SplitMix64::mix(seed ^ SplitMix64::mix(index * kGolden + 0x632BE59BD9B4E019ULL));
}

void TrajectoryConfig::validate() const {
  if (n_trajectories == 0) throw std::invalid_argument("n_trajectories must be at least 1");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw std::invalid_argument("horizon must be positive");
}

Trajectory::Trajectory(int initial_level, std::vector<double> switch_times, double horizon)
    : initial_level_(initial_level), switch_times_(std::move(switch_times)), horizon_(horizon) {
  if (initial_level != 1 && initial_level != -1) throw std::invalid_argument("level must be +1 or -1");
}

int Trajectory::level_at(double t) const {
  const auto switches = std::upper_bound(switch_times_.begin(), switch_times_.end(), t) - switch_times_.begin();
  return (switches % 2 == 0) ? initial_level_ : -initial_level_;
}

double Trajectory::phase(double tau) const {
  if (!(tau >= 0.0)) throw RangeError("tau must be nonnegative");
  if (tau > horizon_) throw RangeError("tau beyond trajectory horizon");
  double phi = 0.0;
  double start = 0.0;
  int level = initial_level_;
  for (const double t : switch_times_) {
    if (t >= tau) break;
    phi += level * (t - start);
    start = t;
    level = -level;
  }
  return phi + level * (tau - start);
}

double Trajectory::time_at_plus() const { return 0.5 * (horizon_ + phase(horizon_)); }

TrajectoryEnsemble::TrajectoryEnsemble(SwitchingRates rates, TrajectoryConfig config,
                                       std::vector<Trajectory> trajectories)
    : rates_(rates), config_(config), trajectories_(std::move(trajectories)) {}

Trajectory sample_trajectory(const SwitchingRates& rates, double horizon, std::uint64_t seed, std::uint64_t index) {
  std::vector<double> switches;
  const Walk w = walk(rates, horizon, seed, index, [&](double t, int) { switches.push_back(t); });
  return {w.initial, std::move(switches), horizon};
}

double sample_phase(const SwitchingRates& rates, double tau, std::uint64_t seed, std::uint64_t index) {
  if (!(tau >= 0.0)) throw RangeError("tau must be nonnegative");
  double phi = 0.0;
  double start = 0.0;
  const Walk w = walk(rates, tau, seed, index, [&](double t, int level) {
    phi += level * (t - start);
    start = t;
  });
  return phi + w.final * (tau - start);
}

TrajectoryEnsemble mc_sample(const SwitchingRates& rates, const TrajectoryConfig& config, unsigned threads) {
  config.validate();
  std::vector<Trajectory> trajectories(config.n_trajectories, Trajectory(1, {}, config.horizon));
  parallel_for(config.n_trajectories, threads, [&](std::size_t i) {
    trajectories[i] = sample_trajectory(rates, config.horizon, config.seed, i);
  });
  return {rates, config, std::move(trajectories)};
}

bool McEstimate::agrees_with(Complex reference, double k) const {
  return std::abs(estimate.real() - reference.real()) <= k * std_error_re &&
         std::abs(estimate.imag() - reference.imag()) <= k * std_error_im;
}

McEstimate mc_characteristic(double n, const SwitchingRates& rates, double tau, const TrajectoryConfig& config,
                             unsigned threads) {
  config.validate();
  if (!(tau >= 0.0)) throw RangeError("tau must be nonnegative");
  if (tau > config.horizon) throw RangeError("tau beyond the trajectory horizon");

  const std::size_t blocks = (config.n_trajectories + kBlockSize - 1) / kBlockSize;
  std::vector<Moments> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t begin = b * kBlockSize;
    const std::size_t end = std::min(config.n_trajectories, begin + kBlockSize);
    Moments m;
    for (std::size_t i = begin; i < end; ++i) {
      const double phi = sample_phase(rates, tau, config.seed, i);
      m.add(std::polar(1.0, n * phi));
    }
    partial[b] = m;
  });

  Moments total;
  for (const Moments& m : partial) total.merge(m);
  McEstimate out;
  out.estimate = {total.mean_re, total.mean_im};
  out.samples = config.n_trajectories;
  if (total.count > 1.0) {
    out.std_error_re = std::sqrt(total.m2_re / (total.count - 1.0) / total.count);
    out.std_error_im = std::sqrt(total.m2_im / (total.count - 1.0) / total.count);
  }
  return out;
}

}  // namespace rtnq
