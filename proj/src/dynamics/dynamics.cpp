#include "rtnq/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "rtnq/characteristic.hpp"
#include "rtnq/errors.hpp"
#include "rtnq/process_average.hpp"

namespace rtnq {

DensityMatrix evolve_state(const BellMixture& mixture, EnvironmentTopology topology, const SwitchingRates& rates,
                           double tau, bool balanced) {
  CMatrix rho = mixture.density().matrix();
  if (topology == EnvironmentTopology::SingleQubit) {
    // phi1 = 0: |00><11| picks exp(-2i phi2), |01><10| picks exp(+2i phi2).
    const Complex plus = lambda_select(2.0, rates, tau, balanced);
    const Complex minus = balanced ? plus : lambda_unbalanced(-2.0, rates, tau);
    rho(0, 3) *= minus;
    rho(3, 0) *= plus;
    rho(1, 2) *= plus;
    rho(2, 1) *= minus;
    return DensityMatrix(rho);
  }

  if (balanced && !rates.is_balanced()) throw InvalidRates("balanced noise requires gamma0 == gamma1");
  const Coupling coupling =
      topology == EnvironmentTopology::Common ? Coupling::Common : Coupling::Independent;
  const NoiseBalance balance = balanced ? NoiseBalance::Balanced : NoiseBalance::Unbalanced;
  const auto average = [&](PhaseAverage kind) { return process_average(kind, coupling, balance, rates, tau); };
  rho(0, 3) *= average(PhaseAverage::SumMinus);
  rho(3, 0) *= average(PhaseAverage::SumPlus);
  rho(1, 2) *= average(PhaseAverage::DiffMinus);
  rho(2, 1) *= average(PhaseAverage::DiffPlus);
  return DensityMatrix(rho);
}

CMatrix partial_transpose(const CMatrix& rho) {
  CMatrix out(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
  return out;
}

double negativity(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw InvariantViolation("negativity needs a two-qubit (4x4) state");
  if (rho.hermiticity_error() > DensityMatrix::kHermitianTol) {
    throw InvariantViolation("negativity needs a Hermitian matrix");
  }
  const Eigen::Matrix4cd pt = partial_transpose(rho.matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(pt, Eigen::EigenvaluesOnly);
  double negative = 0.0;
  for (const double lambda : solver.eigenvalues()) {
    if (lambda < -1e-12) negative += lambda;
  }
  return std::clamp(-2.0 * negative, 0.0, 1.0 + 1e-9);
}

double negativity_bell_closed_form(EnvironmentTopology topology, const SwitchingRates& rates, double tau,
                                   int bell_index, bool balanced) {
  if (bell_index < 0 || bell_index > 3) throw std::out_of_range("Bell index must be 0..3");
  const bool sum_sector = bell_index == 0 || bell_index == 3;
  switch (topology) {
    case EnvironmentTopology::Independent:
      return std::norm(lambda_select(2.0, rates, tau, balanced));
    case EnvironmentTopology::Common:
      return sum_sector ? std::abs(lambda_select(4.0, rates, tau, balanced)) : 1.0;
    case EnvironmentTopology::SingleQubit:
      return std::abs(lambda_select(2.0, rates, tau, balanced));
  }
  return 0.0;
}

double saturation_check(double gamma0, double delta, double tau, EnvironmentTopology topology) {
  return negativity_bell_closed_form(topology, SwitchingRates(gamma0, gamma0 + delta), tau);
}

}  // namespace rtnq
