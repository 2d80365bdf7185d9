#include "rtnq/characteristic.hpp"

#include <cmath>
#include <stdexcept>

#include "rtnq/errors.hpp"

namespace rtnq {
namespace {

// Above this |Re(delta tau)| cosh/sinh are replaced by the two-exponential form,
// which keeps exp(-mean tau) * cosh(delta tau) from becoming 0 * inf.
constexpr double kSplitExponent = 20.0;

void require_time(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tau must be finite and nonnegative");
  }
}

void require_order(double n) {
  if (!std::isfinite(n)) throw std::invalid_argument("n must be finite");
}

// Even series of cosh(x) and sinh(x)/x in y = x^2; |y| < 1e-8 so four terms are exact in double.
Complex cosh_series(Complex y) { return 1.0 + y * (1.0 / 2 + y * (1.0 / 24 + y * (1.0 / 720 + y / 40320.0))); }
Complex sinhc_series(Complex y) { return 1.0 + y * (1.0 / 6 + y * (1.0 / 120 + y * (1.0 / 5040 + y / 362880.0))); }

struct Exponents {
  double mean;
  Complex shift;     // delta^2 - mean^2
  Complex delta_sq;
  Complex delta;     // principal root
};

Exponents exponents(double n, const SwitchingRates& rates) {
  const double mean = rates.mean();
  const Complex shift(-n * n, 2.0 * n * rates.imbalance());
  const Complex delta_sq = delta_squared(n, rates);
  return {mean, shift, delta_sq, std::sqrt(delta_sq)};
}

bool degenerate(const Exponents& e, double tau) { return std::abs(e.delta) * tau < kDegenerateThreshold; }

Complex finish(Complex value, const SwitchingRates& rates) {
  // Balanced noise has a real characteristic function for real n.
  if (rates.imbalance() == 0.0) return {value.real(), 0.0};
  return value;
}

}  // namespace

Complex delta_squared(double n, const SwitchingRates& rates) {
  const double mean = rates.mean();
  return {(mean - n) * (mean + n), 2.0 * n * rates.imbalance()};
}

namespace detail {

Complex lambda_direct(double mean, Complex shift, Complex delta, double tau) {
  const Complex z = delta * tau;
  if (std::abs(z.real()) < kSplitExponent) {
    return std::exp(-mean * tau) * (std::cosh(z) + mean * (std::sinh(z) / delta));
  }
  const Complex s = z.real() >= 0.0 ? delta : -delta;
  // s - mean computed without cancellation: (delta^2 - mean^2) / (s + mean).
  const Complex slow = shift / (s + mean);
  const Complex ratio = mean / s;
  return 0.5 * std::exp(slow * tau) * (1.0 + ratio) + 0.5 * std::exp(-(s + mean) * tau) * (1.0 - ratio);
}

Complex lambda_series(double mean, Complex delta_sq, double tau) {
  const Complex y = delta_sq * (tau * tau);
  return std::exp(-mean * tau) * (cosh_series(y) + mean * tau * sinhc_series(y));
}

}  // namespace detail

Complex lambda_unbalanced(double n, const SwitchingRates& rates, double tau) {
  require_order(n);
  require_time(tau);
  if (tau == 0.0) return {1.0, 0.0};
  const Exponents e = exponents(n, rates);
  const Complex value = degenerate(e, tau) ? detail::lambda_series(e.mean, e.delta_sq, tau)
                                           : detail::lambda_direct(e.mean, e.shift, e.delta, tau);
  return finish(value, rates);
}

Complex lambda_balanced(double n, double gamma, double tau) {
  if (!(gamma > 0.0)) throw InvalidRates("balanced rate gamma must be positive");
  return lambda_unbalanced(n, SwitchingRates::balanced(gamma), tau);
}

Complex lambda_near_degenerate(double n, const SwitchingRates& rates, double tau) {
  require_order(n);
  require_time(tau);
  const Exponents e = exponents(n, rates);
  if (!degenerate(e, tau)) {
    throw std::invalid_argument("lambda_near_degenerate requires |delta tau| < 1e-4");
  }
  return finish(detail::lambda_series(e.mean, e.delta_sq, tau), rates);
}

Complex lambda_derivative(double n, const SwitchingRates& rates, double tau) {
  require_order(n);
  require_time(tau);
  const Exponents e = exponents(n, rates);
  Complex sinh_over_delta;  // exp(-mean tau) sinh(delta tau) / delta
  if (degenerate(e, tau)) {
    sinh_over_delta = std::exp(-e.mean * tau) * tau * sinhc_series(e.delta_sq * (tau * tau));
  } else if (std::abs((e.delta * tau).real()) < kSplitExponent) {
    sinh_over_delta = std::exp(-e.mean * tau) * std::sinh(e.delta * tau) / e.delta;
  } else {
    const Complex s = e.delta.real() >= 0.0 ? e.delta : -e.delta;
    const Complex slow = e.shift / (s + e.mean);
    sinh_over_delta = 0.5 * (std::exp(slow * tau) - std::exp(-(s + e.mean) * tau)) / s;
  }
  return finish(e.shift * sinh_over_delta, rates);
}

Complex lambda_select(double n, const SwitchingRates& rates, double tau, bool balanced) {
  if (balanced) {
    if (!rates.is_balanced()) throw InvalidRates("balanced noise requires gamma0 == gamma1");
    return lambda_balanced(n, rates.gamma0(), tau);
  }
  return lambda_unbalanced(n, rates, tau);
}

}  // namespace rtnq
