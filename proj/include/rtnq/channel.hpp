#pragma once

#include <Eigen/Dense>

#include "rtnq/density_matrix.hpp"
#include "rtnq/rates.hpp"

namespace rtnq {

/// Two diagonal Kraus operators of a single-qubit dephasing channel.
struct KrausPair {
  Eigen::Matrix2cd m1;
  Eigen::Matrix2cd m2;

  /// max-entry deviation of M1^dag M1 + M2^dag M2 from the identity.
  double completeness_error() const;
};

/// |Lambda| below which the Kraus phase is treated as undefined.
inline constexpr double kDegenerateModulus = 1e-14;

/// M1 = sqrt((1-|L|)/2) diag(-u, 1), M2 = sqrt((1+|L|)/2) diag(u, 1), u = conj(L)/|L|,
/// L = Lambda_2(tau). The channel multiplies the |0><1| coherence by conj(L) = Lambda_{-2},
/// matching the phase exp(-2i phi) picked up under exp(-i phi sigma3), and leaves
/// populations unchanged. Throws DegeneratePhase when |L| < kDegenerateModulus.
KrausPair kraus_operators(const SwitchingRates& rates, double tau, bool balanced = false);

/// Same construction from an explicit Lambda_2 value.
KrausPair kraus_from_lambda(Complex lambda2);

/// diag(1, 0), diag(0, 1): the completely dephasing channel.
KrausPair complete_dephasing();

/// Telegraph-noise dephasing channel, falling back to complete dephasing when |Lambda_2| vanishes.
class DephasingChannel {
 public:
  DephasingChannel(const SwitchingRates& rates, double tau, bool balanced = false);
  explicit DephasingChannel(Complex lambda2);

  Complex lambda() const noexcept { return lambda_; }
  /// Factor multiplying the |0><1| element.
  Complex coherence_factor() const noexcept { return std::conj(lambda_); }
  bool degenerate() const noexcept { return degenerate_; }
  const KrausPair& kraus() const noexcept { return kraus_; }

  /// Applies the channel to qubit `qubit` (0 = most significant) of an n-qubit state.
  DensityMatrix apply(const DensityMatrix& rho, int qubit = 0) const;

 private:
  Complex lambda_;
  bool degenerate_ = false;
  KrausPair kraus_;
};

}  // namespace rtnq
