#include "rtnq/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "rtnq/grid.hpp"
#include "rtnq/parallel.hpp"

namespace rtnq {
namespace {

std::size_t axis_count(double lo, double hi, double step) {
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

}  // namespace

void RevivalGridSpec::validate() const {
  if (!(gamma0_min > 0.0 && gamma1_min > 0.0)) throw std::invalid_argument("rate axes must be positive");
  if (!(gamma0_max >= gamma0_min && gamma1_max >= gamma1_min)) throw std::invalid_argument("rate axis max < min");
  if (!(gamma0_step > 0.0 && gamma1_step > 0.0)) throw std::invalid_argument("rate steps must be positive");
  if (!(horizon > 0.0 && time_step > 0.0 && horizon >= time_step)) {
    throw std::invalid_argument("time grid needs 0 < step <= horizon");
  }
  if (!(rel_threshold > 0.0)) throw std::invalid_argument("rel_threshold must be positive");
}

std::size_t RevivalGridSpec::gamma0_count() const { return axis_count(gamma0_min, gamma0_max, gamma0_step); }
std::size_t RevivalGridSpec::gamma1_count() const { return axis_count(gamma1_min, gamma1_max, gamma1_step); }

RevivalMap::RevivalMap(RevivalGridSpec spec, std::vector<std::uint8_t> flags)
    : spec_(spec), flags_(std::move(flags)) {
  if (flags_.size() != rows() * cols()) throw std::invalid_argument("flag count does not match grid");
}

std::size_t RevivalMap::count() const {
  std::size_t n = 0;
  for (const auto f : flags_) n += f != 0;
  return n;
}

bool has_revival(std::span<const double> samples, double rel_threshold) {
  if (samples.empty()) return false;
  double running_min = samples.front();
  for (const double value : samples) {
    if (value > 0.0 && value - running_min > rel_threshold * value) return true;
    running_min = std::min(running_min, value);
  }
  return false;
}

RevivalMap revival_scan(EnvironmentTopology topology, const RevivalGridSpec& grid, unsigned threads) {
  grid.validate();
  const std::size_t rows = grid.gamma0_count();
  const std::size_t cols = grid.gamma1_count();
  const std::size_t steps = static_cast<std::size_t>(std::floor(grid.horizon / grid.time_step + 1e-9));
  std::vector<std::uint8_t> flags(rows * cols, 0);

  parallel_for(rows * cols, threads, [&](std::size_t cell) {
    const SwitchingRates rates(grid.gamma0_at(cell / cols), grid.gamma1_at(cell % cols));
    std::vector<double> samples(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
      samples[k] = negativity_bell_closed_form(topology, rates, grid_point(0.0, grid.time_step, k));
    }
    flags[cell] = has_revival(samples, grid.rel_threshold) ? 1 : 0;
  });
  return {grid, std::move(flags)};
}

}  // namespace rtnq
