#include "rtnq/nonmarkov.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include "rtnq/channel.hpp"
#include "rtnq/characteristic.hpp"
#include "rtnq/parallel.hpp"

namespace rtnq {
namespace {

double distance_at(const SwitchingRates& rates, double tau) { return std::abs(lambda_unbalanced(2.0, rates, tau)); }

// Half the derivative of |Lambda_2|^2; shares its sign with dD/dtau and stays smooth
// where Lambda_2 crosses zero.
double flow_sign(const SwitchingRates& rates, double tau) {
  return (std::conj(lambda_unbalanced(2.0, rates, tau)) * lambda_derivative(2.0, rates, tau)).real();
}

// Locates the extremum of D inside [lo, hi] when the flow changes sign there; otherwise
// returns `fallback` (the grid sample), which is then the best available estimate.
double refine_extremum(const SwitchingRates& rates, double lo, double hi, double fallback) {
  const auto f = [&](double t) { return flow_sign(rates, t); };
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) return fallback;
  std::uintmax_t iterations = 200;
  const auto bracket = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi,
                                                         boost::math::tools::eps_tolerance<double>(52), iterations);
  return 0.5 * (bracket.first + bracket.second);
}

}  // namespace

void TimeGrid::validate() const {
  if (!(step > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(end >= step)) throw std::invalid_argument("time grid end must be at least one step");
}

std::size_t TimeGrid::size() const { return static_cast<std::size_t>(std::floor(end / step + 1e-9)) + 1; }

double trace_distance(const DensityMatrix& rho1, const DensityMatrix& rho2) {
  if (rho1.dim() != rho2.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  const CMatrix diff = rho1.matrix() - rho2.matrix();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double optimal_trace_distance(const SwitchingRates& rates, double tau) { return distance_at(rates, tau); }

double two_qubit_optimal_pair_check(const SwitchingRates& rates, const TimeGrid& grid) {
  grid.validate();
  const double s = 1.0 / std::sqrt(2.0);
  const Eigen::Vector2cd plus(s, s);
  const Eigen::Vector2cd minus(s, -s);
  const DensityMatrix pp = DensityMatrix::pure(Eigen::kroneckerProduct(plus, plus).eval());
  const DensityMatrix mm = DensityMatrix::pure(Eigen::kroneckerProduct(minus, minus).eval());

  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double tau = grid.at(i);
    const DephasingChannel channel(rates, tau);
    const DensityMatrix a = channel.apply(channel.apply(pp, 0), 1);
    const DensityMatrix b = channel.apply(channel.apply(mm, 0), 1);
    worst = std::max(worst, std::abs(trace_distance(a, b) - distance_at(rates, tau)));
  }
  return worst;
}

NMResult blp_measure(const SwitchingRates& rates, const TimeGrid& grid) {
  grid.validate();
  const std::size_t n = grid.size();
  NMResult out;
  out.tau.resize(n);
  out.distance.resize(n);
  out.derivative.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.tau[i] = grid.at(i);
    out.distance[i] = distance_at(rates, out.tau[i]);
  }
  const auto& d = out.distance;
  const double h = grid.step;
  out.derivative[0] = (d[1] - d[0]) / h;
  out.derivative[n - 1] = (d[n - 1] - d[n - 2]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) out.derivative[i] = (d[i + 1] - d[i - 1]) / (2.0 * h);

  double nm = 0.0;
  std::size_t i = 0;
  while (i + 1 < n) {
    if (!(d[i + 1] > d[i])) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j + 1 < n && d[j + 1] > d[j]) ++j;
    // Samples increase on [i, j]: the minimum lies in (tau_{i-1}, tau_{i+1}) and the
    // maximum in (tau_{j-1}, tau_{j+1}) unless they sit on the grid boundary.
    const double start = i > 0 ? refine_extremum(rates, out.tau[i - 1], out.tau[i + 1], out.tau[i]) : out.tau[i];
    const double stop = j + 1 < n ? refine_extremum(rates, out.tau[j - 1], out.tau[j + 1], out.tau[j]) : out.tau[j];

    std::vector<std::pair<double, double>> nodes{{start, distance_at(rates, start)}};
    for (std::size_t k = i + 1; k < j; ++k) {
      if (out.tau[k] > start && out.tau[k] < stop) nodes.emplace_back(out.tau[k], d[k]);
    }
    nodes.emplace_back(stop, distance_at(rates, stop));
    // The half-node central difference is constant across each sub-interval, so the
    // trapezoidal area width * slope reduces to the increment of D.
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const double rise = nodes[k + 1].second - nodes[k].second;
      if (nodes[k + 1].first > nodes[k].first && rise > 0.0) nm += rise;
    }
    i = j;
  }
  out.nm_value = nm;
  return out;
}

std::vector<double> rate_axis(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("rate axis needs step > 0 and hi >= lo");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> axis(count);
  for (std::size_t k = 0; k < count; ++k) axis[k] = grid_point(lo, step, k);
  return axis;
}

NMSurface nm_surface(const std::vector<double>& gamma0, const std::vector<double>& gamma1, const TimeGrid& grid,
                     unsigned threads) {
  grid.validate();
  for (const double g : gamma0)
    if (!(g > 0.0)) throw std::invalid_argument("nm_surface rates must be positive");
  for (const double g : gamma1)
    if (!(g > 0.0)) throw std::invalid_argument("nm_surface rates must be positive");
  NMSurface s{gamma0, gamma1, std::vector<double>(gamma0.size() * gamma1.size(), 0.0)};
  parallel_for(s.nm.size(), threads, [&](std::size_t cell) {
    const SwitchingRates rates(gamma0[cell / gamma1.size()], gamma1[cell % gamma1.size()]);
    s.nm[cell] = blp_measure(rates, grid).nm_value;
  });
  return s;
}

}  // namespace rtnq
