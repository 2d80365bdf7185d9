#pragma once

// Characteristic functions Lambda_n(tau) = E[exp(i n phi(tau))] of the
// accumulated phase of balanced and unbalanced random telegraph noise.

#include "rtnq/rates.hpp"

namespace rtnq {

/// |delta * tau| below which the truncated even series replaces cosh/sinh.
inline constexpr double kDegenerateThreshold = 1e-4;

/// delta^2 = mean^2 - n^2 + 2 i n eps, evaluated as (mean - n)(mean + n) + 2 i n eps.
Complex delta_squared(double n, const SwitchingRates& rates);

/// Balanced telegraph noise, gamma0 = gamma1 = gamma > 0. Real for real n.
Complex lambda_balanced(double n, double gamma, double tau);

/// Unbalanced telegraph noise. |result| <= 1 and result(tau = 0) == 1 exactly.
/// Dispatches to the series form when |delta * tau| < kDegenerateThreshold.
Complex lambda_unbalanced(double n, const SwitchingRates& rates, double tau);

/// Series form exp(-mean tau) [cosh(x) + mean tau sinh(x)/x], x = delta tau, expanded in x^2.
/// Requires |delta * tau| < kDegenerateThreshold (throws std::invalid_argument otherwise).
Complex lambda_near_degenerate(double n, const SwitchingRates& rates, double tau);

/// dLambda_n/dtau = (delta^2 - mean^2) exp(-mean tau) sinh(delta tau) / delta.
Complex lambda_derivative(double n, const SwitchingRates& rates, double tau);

/// Lambda_2^b when `balanced` (requires equal rates), Lambda_2^u otherwise.
Complex lambda_select(double n, const SwitchingRates& rates, double tau, bool balanced);

namespace detail {

// Evaluates the hyperbolic combination for an explicitly supplied root `delta`
// of delta^2; `shift` is delta^2 - mean^2 = -n^2 + 2 i n eps. The result is even
// in delta, so either root gives the same value.
Complex lambda_direct(double mean, Complex shift, Complex delta, double tau);

Complex lambda_series(double mean, Complex delta_sq, double tau);

}  // namespace detail
}  // namespace rtnq
