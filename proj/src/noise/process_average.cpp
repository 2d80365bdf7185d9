#include "rtnq/process_average.hpp"

#include "rtnq/characteristic.hpp"
#include "rtnq/errors.hpp"

namespace rtnq {

std::string_view to_string(PhaseAverage kind) {
  switch (kind) {
    case PhaseAverage::SumMinus: return "sum_minus";
    case PhaseAverage::DiffMinus: return "diff_minus";
    case PhaseAverage::DiffPlus: return "diff_plus";
    case PhaseAverage::SumPlus: return "sum_plus";
  }
  return "unknown";
}

Complex process_average(PhaseAverage kind, Coupling coupling, NoiseBalance balance, const SwitchingRates& rates,
                       double tau) {
  if (balance == NoiseBalance::Balanced) {
    if (!rates.is_balanced()) throw InvalidRates("balanced column requires gamma0 == gamma1");
    const double gamma = rates.gamma0();
    if (coupling == Coupling::Common) {
      if (kind == PhaseAverage::DiffMinus || kind == PhaseAverage::DiffPlus) return {1.0, 0.0};
      return lambda_balanced(4.0, gamma, tau);
    }
    const Complex l2 = lambda_balanced(2.0, gamma, tau);
    return l2 * l2;
  }

  if (coupling == Coupling::Common) {
    switch (kind) {
      case PhaseAverage::SumPlus: return lambda_unbalanced(4.0, rates, tau);
      case PhaseAverage::SumMinus: return lambda_unbalanced(-4.0, rates, tau);
      case PhaseAverage::DiffMinus:
      case PhaseAverage::DiffPlus: return {1.0, 0.0};
    }
  }
  switch (kind) {
    case PhaseAverage::SumPlus: {
      const Complex l = lambda_unbalanced(2.0, rates, tau);
      return l * l;
    }
    case PhaseAverage::SumMinus: {
      const Complex l = lambda_unbalanced(-2.0, rates, tau);
      return l * l;
    }
    case PhaseAverage::DiffMinus:
    case PhaseAverage::DiffPlus:
      return lambda_unbalanced(2.0, rates, tau) * lambda_unbalanced(-2.0, rates, tau);
  }
  return {1.0, 0.0};
}

}  // namespace rtnq
