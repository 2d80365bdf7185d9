#pragma once

#include <array>

#include <Eigen/Dense>

#include "rtnq/density_matrix.hpp"

namespace rtnq {

/// Bell state |sigma_k / sqrt(2)>> = sum_jl (sigma_k)_jl |j>|l> / sqrt(2), k = 0..3 with sigma_0 = I.
///   k=0: (|00> + |11>)/sqrt2     k=1: (|01> + |10>)/sqrt2
///   k=2: (-i|01> + i|10>)/sqrt2  k=3: (|00> - |11>)/sqrt2
Eigen::Vector4cd bell_vector(int k);

/// Pauli matrix sigma_k, k = 0..3.
Eigen::Matrix2cd pauli(int k);

/// Weights c_k >= 0 over the four Bell states, summing to 1 within 1e-12.
class BellMixture {
 public:
  explicit BellMixture(std::array<double, 4> weights);

  static BellMixture pure(int k);

  double operator[](int k) const { return weights_.at(static_cast<std::size_t>(k)); }
  const std::array<double, 4>& weights() const noexcept { return weights_; }

  DensityMatrix density() const;

 private:
  std::array<double, 4> weights_;
};

}  // namespace rtnq
