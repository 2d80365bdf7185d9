#pragma once

#include <string_view>

#include "rtnq/rates.hpp"

namespace rtnq {

/// The four phase factors appearing in the evolved two-qubit state, phi_pm = phi1 +- phi2.
enum class PhaseAverage {
  SumMinus,   // exp(-2i (phi1 + phi2))
  DiffMinus,  // exp(-2i (phi1 - phi2))
  DiffPlus,   // exp(+2i (phi1 - phi2))
  SumPlus,    // exp(+2i (phi1 + phi2))
};

/// Whether the two qubits see independent copies of the noise or one shared realization.
enum class Coupling { Independent, Common };

enum class NoiseBalance { Balanced, Unbalanced };

std::string_view to_string(PhaseAverage kind);

/// Ensemble average of the phase factor `kind` for the given coupling and noise balance.
///
/// Common coupling:      Sum -> Lambda_{+-4},          Diff -> 1
/// Independent coupling: Sum -> (Lambda_{+-2})^2,      Diff -> Lambda_2 Lambda_{-2}
/// Balanced noise uses Lambda^b (even in n) and requires gamma0 == gamma1.
Complex process_average(PhaseAverage kind, Coupling coupling, NoiseBalance balance, const SwitchingRates& rates,
                       double tau);

}  // namespace rtnq
