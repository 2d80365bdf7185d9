#include "rtnq/teleport.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

#include "rtnq/bell.hpp"
#include "rtnq/characteristic.hpp"
#include "rtnq/parallel.hpp"

namespace rtnq {
namespace {

std::size_t axis_count(double lo, double hi, double step) {
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

Eigen::Vector4cd vectorize(const Eigen::Matrix2cd& op) {
  Eigen::Vector4cd v;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) v(2 * j + k) = op(j, k);
  return v;
}

// Tr over qubits 1 and 2 of an 8x8 three-qubit operator.
Eigen::Matrix2cd trace_first_two(const CMatrix& m) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int ab = 0; ab < 4; ++ab)
    for (int c = 0; c < 2; ++c)
      for (int d = 0; d < 2; ++d) out(c, d) += m(2 * ab + c, 2 * ab + d);
  return out;
}

}  // namespace

void InputPureState::validate() const {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw std::invalid_argument("theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi)) throw std::invalid_argument("phi must lie in [0, 2 pi)");
}

Eigen::Vector2cd InputPureState::ket() const {
  return {Complex(std::cos(0.5 * theta), 0.0), std::polar(std::sin(0.5 * theta), phi)};
}

DensityMatrix InputPureState::projector() const {
  const Eigen::Vector2cd v = ket();
  return DensityMatrix(v * v.adjoint());
}

std::string_view to_string(TeleportNoise noise) {
  return noise == TeleportNoise::OneSided ? "one_sided" : "two_sided";
}

DensityMatrix resource_state(const SwitchingRates& rates, double tau, bool balanced) {
  const DephasingChannel channel(rates, tau, balanced);
  const Eigen::Vector4cd v1 = vectorize(channel.kraus().m1);
  const Eigen::Vector4cd v2 = vectorize(channel.kraus().m2);
  return DensityMatrix(0.5 * (v1 * v1.adjoint() + v2 * v2.adjoint()));
}

DensityMatrix teleport_protocol_oracle(const InputPureState& input, const SwitchingRates& rates, double tau,
                                       TeleportNoise noise, bool balanced) {
  input.validate();
  const DephasingChannel channel(rates, tau, balanced);
  DensityMatrix pair = BellMixture::pure(0).density();
  if (noise == TeleportNoise::TwoSided) pair = channel.apply(pair, 0);
  pair = channel.apply(pair, 1);

  const CMatrix total = Eigen::kroneckerProduct(input.projector().matrix(), pair.matrix()).eval();
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4cd b = bell_vector(k);
    const CMatrix projector = Eigen::kroneckerProduct(CMatrix(b * b.adjoint()), CMatrix::Identity(2, 2)).eval();
    const Eigen::Matrix2cd unnormalized = trace_first_two(projector * total * projector);
    const double probability = unnormalized.trace().real();
    if (!(probability > 0.0)) continue;
    const Eigen::Matrix2cd conditional = unnormalized / probability;
    const Eigen::Matrix2cd v = pauli(k);
    out += probability * (v * conditional * v.adjoint());
  }
  return DensityMatrix(out);
}

double fidelity(const InputPureState& input, const DensityMatrix& rho) {
  if (rho.dim() != 2) throw std::invalid_argument("fidelity needs a single-qubit state");
  const Eigen::Vector2cd v = input.ket();
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

double teleport_fidelity_closed_form(double theta, Complex lambda) {
  const double re = lambda.real();
  const double c = std::cos(theta);
  return 0.5 * (1.0 + re + (1.0 - re) * c * c);
}

FidelityResult average_fidelity_one_sided(const SwitchingRates& rates, double tau, bool balanced) {
  const Complex l = lambda_select(2.0, rates, tau, balanced);
  return {(2.0 + l.real()) / 3.0, tau, rates, TeleportNoise::OneSided};
}

FidelityResult average_fidelity_two_sided(const SwitchingRates& rates, double tau, bool balanced) {
  const Complex l = lambda_select(2.0, rates, tau, balanced);
  return {(2.0 + (l * l).real()) / 3.0, tau, rates, TeleportNoise::TwoSided};
}

FidelityResult average_fidelity(const SwitchingRates& rates, double tau, TeleportNoise noise, bool balanced) {
  return noise == TeleportNoise::OneSided ? average_fidelity_one_sided(rates, tau, balanced)
                                          : average_fidelity_two_sided(rates, tau, balanced);
}

void AdvantageGridSpec::validate() const {
  if (!(gamma1_min > 0.0 && gamma1_max >= gamma1_min && gamma1_step > 0.0)) {
    throw std::invalid_argument("gamma1 axis must be positive with max >= min and step > 0");
  }
  if (!(tau_min >= 0.0 && tau_max >= tau_min && tau_step > 0.0)) {
    throw std::invalid_argument("tau axis must be nonnegative with max >= min and step > 0");
  }
}

std::size_t AdvantageGridSpec::gamma1_count() const { return axis_count(gamma1_min, gamma1_max, gamma1_step); }
std::size_t AdvantageGridSpec::tau_count() const { return axis_count(tau_min, tau_max, tau_step); }

AdvantageMap::AdvantageMap(double gamma0, AdvantageGridSpec spec, std::vector<std::uint8_t> flags)
    : gamma0_(gamma0), spec_(spec), flags_(std::move(flags)) {
  if (flags_.size() != rows() * cols()) throw std::invalid_argument("flag count does not match grid");
}

double AdvantageMap::area_fraction() const {
  if (flags_.empty()) return 0.0;
  std::size_t n = 0;
  for (const auto f : flags_) n += f != 0;
  return static_cast<double>(n) / static_cast<double>(flags_.size());
}

AdvantageMap fidelity_advantage_region(double gamma0, const AdvantageGridSpec& grid, TeleportNoise noise,
                                       unsigned threads) {
  if (!(gamma0 > 0.0)) throw std::invalid_argument("gamma0 must be positive");
  grid.validate();
  const std::size_t rows = grid.gamma1_count();
  const std::size_t cols = grid.tau_count();
  const SwitchingRates reference = SwitchingRates::balanced(gamma0);
  std::vector<std::uint8_t> flags(rows * cols, 0);
  parallel_for(rows, threads, [&](std::size_t i) {
    const SwitchingRates rates(gamma0, grid.gamma1_at(i));
    for (std::size_t j = 0; j < cols; ++j) {
      const double tau = grid.tau_at(j);
      const double unbalanced = average_fidelity(rates, tau, noise).value;
      const double balanced = average_fidelity(reference, tau, noise).value;
      flags[i * cols + j] = unbalanced > balanced ? 1 : 0;
    }
  });
  return {gamma0, grid, std::move(flags)};
}

}  // namespace rtnq
