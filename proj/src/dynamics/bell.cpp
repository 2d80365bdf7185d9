#include "rtnq/bell.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rtnq {

Eigen::Matrix2cd pauli(int k) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd s;
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -i, i, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw std::out_of_range("Pauli index must be 0..3");
  }
  return s;
}

Eigen::Vector4cd bell_vector(int k) {
  const Eigen::Matrix2cd s = pauli(k);
  Eigen::Vector4cd v;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) v(2 * j + l) = s(j, l) / std::sqrt(2.0);
  return v;
}

BellMixture::BellMixture(std::array<double, 4> weights) : weights_(weights) {
  for (const double c : weights_) {
    if (!(c >= 0.0 && c <= 1.0)) throw std::invalid_argument("Bell weights must lie in [0, 1]");
  }
  const double sum = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("Bell weights must sum to 1");
}

BellMixture BellMixture::pure(int k) {
  std::array<double, 4> c{};
  c.at(static_cast<std::size_t>(k)) = 1.0;
  return BellMixture(c);
}

// X-shaped: populations (c0+c3)/2, (c1+c2)/2 and coherences (c0-c3)/2 on |00><11|, (c1-c2)/2 on |01><10|.
DensityMatrix BellMixture::density() const {
  const auto& c = weights_;
  CMatrix rho = CMatrix::Zero(4, 4);
  rho(0, 0) = rho(3, 3) = 0.5 * (c[0] + c[3]);
  rho(1, 1) = rho(2, 2) = 0.5 * (c[1] + c[2]);
  rho(0, 3) = rho(3, 0) = 0.5 * (c[0] - c[3]);
  rho(1, 2) = rho(2, 1) = 0.5 * (c[1] - c[2]);
  return DensityMatrix(rho);
}

}  // namespace rtnq
