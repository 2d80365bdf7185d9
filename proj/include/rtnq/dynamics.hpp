#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rtnq/bell.hpp"
#include "rtnq/density_matrix.hpp"
#include "rtnq/grid.hpp"
#include "rtnq/rates.hpp"

namespace rtnq {

enum class EnvironmentTopology {
  Independent,  // each qubit sees its own realization of the same process
  Common,       // both qubits see one shared realization
  SingleQubit,  // only the second qubit is noisy (B1 = 0)
};

/// Ensemble-averaged two-qubit state at time tau, starting from a Bell mixture.
/// With `balanced` the balanced characteristic function is used (rates must be equal).
DensityMatrix evolve_state(const BellMixture& mixture, EnvironmentTopology topology, const SwitchingRates& rates,
                           double tau, bool balanced = false);

/// Twice the absolute sum of the negative eigenvalues of the partial transpose (second
/// qubit). Eigenvalues with |lambda| < 1e-12 are treated as zero; the result is clamped
/// to [0, 1 + 1e-9]. Throws InvariantViolation for non-Hermitian or non-4x4 input.
double negativity(const DensityMatrix& rho);

/// Partial transpose on the second qubit of a 4x4 matrix.
CMatrix partial_transpose(const CMatrix& rho);

/// Closed-form negativity of an initial Bell state k under pure dephasing:
///   k = 0, 3: Independent |Lambda_2|^2, Common |Lambda_4|, SingleQubit |Lambda_2|
///   k = 1, 2: Independent |Lambda_2|^2, Common 1,          SingleQubit |Lambda_2|
double negativity_bell_closed_form(EnvironmentTopology topology, const SwitchingRates& rates, double tau,
                                   int bell_index = 0, bool balanced = false);

struct RevivalGridSpec {
  double gamma0_min = 0.05;
  double gamma0_max = 10.0;
  double gamma0_step = 0.05;
  double gamma1_min = 0.05;
  double gamma1_max = 10.0;
  double gamma1_step = 0.05;
  double horizon = 20.0;
  double time_step = 1e-2;
  double rel_threshold = 1e-6;

  void validate() const;
  std::size_t gamma0_count() const;
  std::size_t gamma1_count() const;
  double gamma0_at(std::size_t i) const { return grid_point(gamma0_min, gamma0_step, i); }
  double gamma1_at(std::size_t j) const { return grid_point(gamma1_min, gamma1_step, j); }
};

/// Oscillation flags over a (gamma0, gamma1) grid, row-major in gamma0.
class RevivalMap {
 public:
  RevivalMap(RevivalGridSpec spec, std::vector<std::uint8_t> flags);

  const RevivalGridSpec& spec() const noexcept { return spec_; }
  std::size_t rows() const noexcept { return spec_.gamma0_count(); }
  std::size_t cols() const noexcept { return spec_.gamma1_count(); }
  bool at(std::size_t i, std::size_t j) const { return flags_.at(i * cols() + j) != 0; }
  std::size_t count() const;

 private:
  RevivalGridSpec spec_;
  std::vector<std::uint8_t> flags_;
};

/// True when some sample exceeds an earlier minimum by more than rel_threshold times
/// its own value (zero samples never count as a rise).
bool has_revival(std::span<const double> samples, double rel_threshold);

/// Samples the Bell-state negativity N(tau) on [0, horizon] for every grid cell and flags
/// cells whose negativity regrows after a minimum. Cells are independent; output order is fixed.
RevivalMap revival_scan(EnvironmentTopology topology, const RevivalGridSpec& grid, unsigned threads = 1);

/// Negativity of a Bell pair at time tau for rates (gamma0, gamma0 + delta).
double saturation_check(double gamma0, double delta, double tau = 10.0,
                        EnvironmentTopology topology = EnvironmentTopology::Independent);

}  // namespace rtnq
