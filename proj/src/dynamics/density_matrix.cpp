#include "rtnq/density_matrix.hpp"

#include <cmath>
#include <string>

#include "rtnq/errors.hpp"

namespace rtnq {

DensityMatrix::DensityMatrix(CMatrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InvariantViolation("density matrix must be square");
  if (m_.rows() != 2 && m_.rows() != 4 && m_.rows() != 8) {
    throw InvariantViolation("density matrix dimension must be 2, 4 or 8, got " + std::to_string(m_.rows()));
  }
}

DensityMatrix DensityMatrix::pure(const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd v = psi.normalized();
  return DensityMatrix(v * v.adjoint());
}

int DensityMatrix::qubits() const noexcept {
  switch (m_.rows()) {
    case 2: return 1;
    case 4: return 2;
    default: return 3;
  }
}

double DensityMatrix::hermiticity_error() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
  const CMatrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_valid() const {
  return hermiticity_error() <= kHermitianTol && std::abs(trace() - 1.0) <= kTraceTol &&
         min_eigenvalue() >= -kEigenTol;
}

void DensityMatrix::require_valid() const {
  if (hermiticity_error() > kHermitianTol) throw InvariantViolation("density matrix is not Hermitian");
  if (std::abs(trace() - 1.0) > kTraceTol) throw InvariantViolation("density matrix trace differs from 1");
  if (min_eigenvalue() < -kEigenTol) throw InvariantViolation("density matrix has a negative eigenvalue");
}

}  // namespace rtnq
