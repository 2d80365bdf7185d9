#pragma once

#include <cstddef>
#include <vector>

#include "rtnq/density_matrix.hpp"
#include "rtnq/grid.hpp"
#include "rtnq/rates.hpp"

namespace rtnq {

/// Uniform grid on [0, end] with floor(end/step) + 1 points.
struct TimeGrid {
  double end = 10.0;
  double step = 1e-3;

  void validate() const;
  std::size_t size() const;
  double at(std::size_t i) const { return grid_point(0.0, step, i); }
};

struct NMResult {
  double nm_value = 0.0;
  std::vector<double> tau;
  std::vector<double> distance;    // D(tau) = |Lambda_2(tau)|
  std::vector<double> derivative;  // central differences of D on the grid (one-sided at the ends)
};

/// (1/2) sum |eigenvalues(rho1 - rho2)|. Throws std::invalid_argument on dimension mismatch.
double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2);

/// Maximal trace distance between evolved single-qubit states: |Lambda_2(tau)|.
double optimal_trace_distance(const SwitchingRates& rates, double tau);

/// Evolves |++> and |--> through two independent single-qubit channels and returns
/// max over the grid of |trace_distance - |Lambda_2||.
double two_qubit_optimal_pair_check(const SwitchingRates& rates, const TimeGrid& grid);

/// BLP measure: integral over [0, end] of the positive part of dD/dtau.
///
/// D is sampled on the grid. Each maximal run of increasing samples is clipped at its
/// bracketing extrema, located as roots of d|Lambda|^2/dtau, and the flow over the run
/// is integrated with the trapezoidal rule on the half-node central differences.
NMResult blp_measure(const SwitchingRates& rates, const TimeGrid& grid);

struct NMSurface {
  std::vector<double> gamma0;
  std::vector<double> gamma1;
  std::vector<double> nm;  // row-major in gamma0

  double at(std::size_t i, std::size_t j) const { return nm.at(i * gamma1.size() + j); }
};

/// blp_measure over the product of the two rate axes; cells are independent and the
/// output order is fixed regardless of `threads`.
NMSurface nm_surface(const std::vector<double>& gamma0, const std::vector<double>& gamma1, const TimeGrid& grid,
                     unsigned threads = 1);

/// lo, lo + step, ... <= hi (inclusive with 1e-9 slack).
std::vector<double> rate_axis(double lo, double hi, double step);

}  // namespace rtnq
