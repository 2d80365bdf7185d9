#pragma once

#include <complex>

namespace rtnq {

using Complex = std::complex<double>;

/// Dimensionless switching rates (gamma0, gamma1) of a random telegraph process.
///
/// Rates are measured in units of the coupling amplitude nu. The process sits in
/// level +1 for an exponential time with rate gamma1 and in level -1 for an
/// exponential time with rate gamma0, which is the assignment under which the
/// closed-form characteristic function carries the imbalance term +2 i n eps.
class SwitchingRates {
 public:
  /// Throws InvalidRates unless both rates are finite, nonnegative and not both zero.
  SwitchingRates(double gamma0, double gamma1);

  /// Equal rates (balanced telegraph noise).
  static SwitchingRates balanced(double gamma);

  double gamma0() const noexcept { return gamma0_; }
  double gamma1() const noexcept { return gamma1_; }

  /// (gamma0 + gamma1) / 2
  double mean() const noexcept { return 0.5 * (gamma0_ + gamma1_); }
  /// (gamma0 - gamma1) / 2
  double imbalance() const noexcept { return 0.5 * (gamma0_ - gamma1_); }

  bool is_balanced() const noexcept { return gamma0_ == gamma1_; }
  SwitchingRates swapped() const { return {gamma1_, gamma0_}; }

  friend bool operator==(const SwitchingRates&, const SwitchingRates&) = default;

 private:
  double gamma0_;
  double gamma1_;
};

/// Rates and time in physical units, before rescaling by the coupling amplitude.
struct PhysicalUnits {
  double nu = 1.0;
  double raw_rate0 = 0.0;
  double raw_rate1 = 0.0;
  double raw_time = 0.0;
};

struct Rescaled {
  SwitchingRates rates;
  double tau;
};

/// gamma_k = rate_k / nu, tau = nu * t. Throws InvalidUnits when nu <= 0.
Rescaled rescale(const PhysicalUnits& units);

}  // namespace rtnq
