#pragma once

#include <Eigen/Dense>

#include "rtnq/rates.hpp"

namespace rtnq {

using CMatrix = Eigen::MatrixXcd;

/// Complex square matrix of dimension 2 (one qubit), 4 (two qubits) or 8 (three qubits),
/// intended to hold a Hermitian, unit-trace, positive-semidefinite state.
///
/// Construction only checks the shape; `require_valid` checks the physical contract.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kEigenTol = 1e-10;

  explicit DensityMatrix(CMatrix m);

  /// |psi><psi| for a (not necessarily normalized) state vector.
  static DensityMatrix pure(const Eigen::VectorXcd& psi);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  int qubits() const noexcept;

  Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }
  const CMatrix& matrix() const noexcept { return m_; }

  Complex trace() const { return m_.trace(); }
  /// max |rho_ij - conj(rho_ji)|
  double hermiticity_error() const;
  double min_eigenvalue() const;
  bool is_valid() const;
  /// Throws InvariantViolation naming the first failed property.
  void require_valid() const;

 private:
  CMatrix m_;
};

}  // namespace rtnq
