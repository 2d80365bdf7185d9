#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rtnq/channel.hpp"
#include "rtnq/density_matrix.hpp"
#include "rtnq/grid.hpp"
#include "rtnq/rates.hpp"

namespace rtnq {

/// cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>, theta in [0, pi], phi in [0, 2 pi).
struct InputPureState {
  double theta = 0.0;
  double phi = 0.0;

  void validate() const;
  Eigen::Vector2cd ket() const;
  DensityMatrix projector() const;
};

/// OneSided: only Bob's resource qubit is noisy. TwoSided: both resource qubits pass
/// through independent channels.
enum class TeleportNoise { OneSided, TwoSided };

std::string_view to_string(TeleportNoise noise);

/// (I x E)[|sigma0/sqrt2>><<sigma0/sqrt2|] = (|M1>><<M1| + |M2>><<M2|) / 2 with |O>> = sum_jk O_jk |j>|k>.
DensityMatrix resource_state(const SwitchingRates& rates, double tau, bool balanced = false);

/// Bob's corrected output of the full three-qubit protocol: the input on qubit 1, the noisy
/// resource on qubits 2 and 3, Bell projections on qubits 1 and 2 with Born weights, and
/// the Pauli correction sigma_k on qubit 3, summed over the four outcomes.
DensityMatrix teleport_protocol_oracle(const InputPureState& input, const SwitchingRates& rates, double tau,
                                       TeleportNoise noise = TeleportNoise::OneSided, bool balanced = false);

/// <psi| rho |psi>
double fidelity(const InputPureState& input, const DensityMatrix& rho);

/// (1 + Re L + (1 - Re L) cos^2 theta) / 2 for the effective coherence factor L
/// (Lambda_2 one-sided, Lambda_2^2 two-sided).
double teleport_fidelity_closed_form(double theta, Complex lambda);

struct FidelityResult {
  double value;
  double tau;
  SwitchingRates rates;
  TeleportNoise noise;
};

/// (2 + Re Lambda_2(tau)) / 3
FidelityResult average_fidelity_one_sided(const SwitchingRates& rates, double tau, bool balanced = false);
/// (2 + Re[Lambda_2(tau)^2]) / 3
FidelityResult average_fidelity_two_sided(const SwitchingRates& rates, double tau, bool balanced = false);
FidelityResult average_fidelity(const SwitchingRates& rates, double tau, TeleportNoise noise, bool balanced = false);

struct AdvantageGridSpec {
  double gamma1_min = 0.05;
  double gamma1_max = 10.0;
  double gamma1_step = 0.05;
  double tau_min = 0.0;
  double tau_max = 20.0;
  double tau_step = 1e-2;

  void validate() const;
  std::size_t gamma1_count() const;
  std::size_t tau_count() const;
  double gamma1_at(std::size_t i) const { return grid_point(gamma1_min, gamma1_step, i); }
  double tau_at(std::size_t j) const { return grid_point(tau_min, tau_step, j); }
};

/// Cells (gamma1 row, tau column) where the unbalanced average fidelity strictly exceeds
/// the balanced one at the same gamma0.
class AdvantageMap {
 public:
  AdvantageMap(double gamma0, AdvantageGridSpec spec, std::vector<std::uint8_t> flags);

  double gamma0() const noexcept { return gamma0_; }
  const AdvantageGridSpec& spec() const noexcept { return spec_; }
  std::size_t rows() const noexcept { return spec_.gamma1_count(); }
  std::size_t cols() const noexcept { return spec_.tau_count(); }
  bool at(std::size_t i, std::size_t j) const { return flags_.at(i * cols() + j) != 0; }
  double area_fraction() const;

 private:
  double gamma0_;
  AdvantageGridSpec spec_;
  std::vector<std::uint8_t> flags_;
};

AdvantageMap fidelity_advantage_region(double gamma0, const AdvantageGridSpec& grid,
                                       TeleportNoise noise = TeleportNoise::OneSided, unsigned threads = 1);

}  // namespace rtnq
