#include "rtnq/channel.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "rtnq/characteristic.hpp"
#include "rtnq/errors.hpp"

namespace rtnq {
namespace {

CMatrix embed(const Eigen::Matrix2cd& op, int qubit, int n_qubits) {
  const auto before = Eigen::Index{1} << qubit;
  const auto after = Eigen::Index{1} << (n_qubits - qubit - 1);
  const CMatrix left = Eigen::kroneckerProduct(CMatrix::Identity(before, before), CMatrix(op)).eval();
  return Eigen::kroneckerProduct(left, CMatrix::Identity(after, after)).eval();
}

}  // namespace

double KrausPair::completeness_error() const {
  const Eigen::Matrix2cd sum = m1.adjoint() * m1 + m2.adjoint() * m2;
  return (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

KrausPair kraus_from_lambda(Complex lambda2) {
  const double modulus = std::abs(lambda2);
  if (modulus < kDegenerateModulus) throw DegeneratePhase("|Lambda| too small for a Kraus phase");
  const Complex u = std::conj(lambda2) / modulus;
  // |Lambda| <= 1 analytically; clamp round-off so the square roots stay real.
  const double m = std::min(modulus, 1.0);
  const double a = std::sqrt(0.5 * (1.0 - m));
  const double b = std::sqrt(0.5 * (1.0 + m));
  KrausPair k;
  k.m1 << -a * u, 0.0, 0.0, a;
  k.m2 << b * u, 0.0, 0.0, b;
  return k;
}

KrausPair kraus_operators(const SwitchingRates& rates, double tau, bool balanced) {
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be nonnegative");
  return kraus_from_lambda(lambda_select(2.0, rates, tau, balanced));
}

KrausPair complete_dephasing() {
  KrausPair k;
  k.m1 << 1.0, 0.0, 0.0, 0.0;
  k.m2 << 0.0, 0.0, 0.0, 1.0;
  return k;
}

DephasingChannel::DephasingChannel(const SwitchingRates& rates, double tau, bool balanced)
    : DephasingChannel(lambda_select(2.0, rates, tau, balanced)) {}

DephasingChannel::DephasingChannel(Complex lambda2) : lambda_(lambda2) {
  try {
    kraus_ = kraus_from_lambda(lambda2);
  } catch (const DegeneratePhase&) {
    degenerate_ = true;
    kraus_ = complete_dephasing();
  }
}

DensityMatrix DephasingChannel::apply(const DensityMatrix& rho, int qubit) const {
  const int n = rho.qubits();
  if (qubit < 0 || qubit >= n) throw std::out_of_range("target qubit out of range");
  const CMatrix k1 = embed(kraus_.m1, qubit, n);
  const CMatrix k2 = embed(kraus_.m2, qubit, n);
  const CMatrix& r = rho.matrix();
  return DensityMatrix(k1 * r * k1.adjoint() + k2 * r * k2.adjoint());
}

}  // namespace rtnq
