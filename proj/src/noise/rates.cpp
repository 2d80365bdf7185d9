#include "rtnq/rates.hpp"

#include <cmath>
#include <string>

#include "rtnq/errors.hpp"

namespace rtnq {

SwitchingRates::SwitchingRates(double gamma0, double gamma1) : gamma0_(gamma0), gamma1_(gamma1) {
  if (!std::isfinite(gamma0) || !std::isfinite(gamma1)) {
    throw InvalidRates("switching rates must be finite");
  }
  if (gamma0 < 0.0 || gamma1 < 0.0) {
    throw InvalidRates("switching rates must be nonnegative, got (" + std::to_string(gamma0) + ", " +
                       std::to_string(gamma1) + ")");
  }
  if (gamma0 == 0.0 && gamma1 == 0.0) {
    throw InvalidRates("switching rates must not both be zero");
  }
}

SwitchingRates SwitchingRates::balanced(double gamma) { return {gamma, gamma}; }

Rescaled rescale(const PhysicalUnits& units) {
  if (!(units.nu > 0.0) || !std::isfinite(units.nu)) {
    throw InvalidUnits("coupling amplitude nu must be positive and finite");
  }
  if (!(units.raw_time >= 0.0)) {
    throw InvalidUnits("time must be nonnegative");
  }
  return {SwitchingRates(units.raw_rate0 / units.nu, units.raw_rate1 / units.nu), units.nu * units.raw_time};
}

}  // namespace rtnq
