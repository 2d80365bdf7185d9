#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "rtnq/characteristic.hpp"
#include "rtnq/errors.hpp"
#include "rtnq/process_average.hpp"
#include "rtnq/rates.hpp"
#include "rtnq/telegraph.hpp"

namespace rtnq {
namespace {

// Monte-Carlo fixture values, 10^6 trajectories.
struct McFixture {
  double n, gamma0, gamma1, tau;
  std::uint64_t seed;
  Complex value;
  double se_re, se_im;
};
constexpr McFixture kBalancedFixture{2, 4, 4, 0.5, 20240611, {0.82225782437718153, 0.00069817643709125306},
                                     0.000164, 0.000545};
constexpr McFixture kUnbalancedFixture{2, 1, 3, 1.0, 20240612, {0.28025977647605982, -0.43679191361488706},
                                       0.000531, 0.00067};

bool within_3se(const McFixture& f, Complex closed) {
  return std::abs(closed.real() - f.value.real()) <= 3 * f.se_re &&
         std::abs(closed.imag() - f.value.imag()) <= 3 * f.se_im;
}

TEST(SwitchingRates, RejectsInvalid) {
  EXPECT_THROW(SwitchingRates(0, 0), InvalidRates);
  EXPECT_THROW(SwitchingRates(-1, 2), InvalidRates);
  EXPECT_THROW(SwitchingRates(std::nan(""), 2), InvalidRates);
  EXPECT_THROW(SwitchingRates(1, INFINITY), InvalidRates);
  EXPECT_NO_THROW(SwitchingRates(0, 2));
}

TEST(SwitchingRates, MeanAndImbalance) {
  const SwitchingRates r(1, 3);
  EXPECT_DOUBLE_EQ(r.mean(), 2.0);
  EXPECT_DOUBLE_EQ(r.imbalance(), -1.0);
  EXPECT_FALSE(r.is_balanced());
  EXPECT_EQ(r.swapped(), SwitchingRates(3, 1));
}

TEST(Rescale, LinearInNu) {
  auto a = rescale({1, 3, 5, 2});
  EXPECT_EQ(a.rates, SwitchingRates(3, 5));
  EXPECT_DOUBLE_EQ(a.tau, 2);
  auto b = rescale({2, 3, 5, 2});
  EXPECT_EQ(b.rates, SwitchingRates(1.5, 2.5));
  EXPECT_DOUBLE_EQ(b.tau, 4);
  auto c = rescale({0.5, 1, 1, 10});
  EXPECT_EQ(c.rates, SwitchingRates(2, 2));
  EXPECT_DOUBLE_EQ(c.tau, 5);
  EXPECT_THROW(rescale({0, 1, 1, 1}), InvalidUnits);
  EXPECT_THROW(rescale({-1, 1, 1, 1}), InvalidUnits);
}

TEST(LambdaBalanced, Examples) {
  EXPECT_EQ(lambda_balanced(2, 4, 0), Complex(1, 0));
  EXPECT_NEAR(lambda_balanced(0, 3, 7).real(), 1.0, 1e-14);
  EXPECT_THROW(lambda_balanced(2, 0, 1), InvalidRates);
}

TEST(LambdaBalanced, ExtendedPrecisionFixture) {
  // 50-digit evaluation of e^{-4t}[cosh(sqrt(12) t) + 4/sqrt(12) sinh(sqrt(12) t)] at t = 1/2.
  const Complex l = lambda_balanced(2, 4, 0.5);
  EXPECT_NEAR(l.real(), 0.82226342390180950925, 1e-15);
  EXPECT_EQ(l.imag(), 0.0);
  EXPECT_TRUE(within_3se(kBalancedFixture, l));
}

TEST(LambdaUnbalanced, MonteCarloFixture) {
  const Complex l = lambda_unbalanced(2, SwitchingRates(1, 3), 1.0);
  EXPECT_TRUE(within_3se(kUnbalancedFixture, l)) << l;
}

TEST(LambdaUnbalanced, MatchesFeynmanKac) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rate(0.01, 20), time(0, 20), order(-6, 6);
  for (int i = 0; i < 500; ++i) {
    const double n = order(rng), g0 = rate(rng), g1 = rate(rng), tau = time(rng);
    const Complex closed = lambda_unbalanced(n, SwitchingRates(g0, g1), tau);
    const Complex oracle = oracles::feynman_kac_lambda(n, g0, g1, tau);
    EXPECT_NEAR(std::abs(closed - oracle), 0.0, 1e-11) << n << " " << g0 << " " << g1 << " " << tau;
  }
}

TEST(LambdaUnbalanced, BalancedReduction) {
  for (double g : {0.05, 0.7, 2.0, 3.3, 40.0})
    for (double tau : {0.0, 0.01, 1.0, 7.5, 20.0}) {
      const Complex u = lambda_unbalanced(2, SwitchingRates(g, g), tau);
      const Complex b = lambda_balanced(2, g, tau);
      EXPECT_NEAR(u.real(), b.real(), 1e-13);
      EXPECT_EQ(u.imag(), 0.0);
    }
}

TEST(LambdaUnbalanced, NegativeOrderIsConjugate) {
  const SwitchingRates r(0.4, 2.9);
  for (double tau : {0.3, 1.0, 4.0, 12.0}) {
    const Complex plus = lambda_unbalanced(2, r, tau);
    const Complex minus = lambda_unbalanced(-2, r, tau);
    EXPECT_NEAR(std::abs(minus - std::conj(plus)), 0.0, 1e-14);
  }
}

TEST(LambdaUnbalanced, BranchOfSquareRootIsIrrelevant) {
  const SwitchingRates r(1.3, 0.2);
  for (double tau : {0.5, 2.0, 9.0}) {
    const double n = 2.0;
    const Complex shift(-n * n, 2.0 * n * r.imbalance());
    const Complex delta = std::sqrt(delta_squared(n, r));
    const Complex a = detail::lambda_direct(r.mean(), shift, delta, tau);
    const Complex b = detail::lambda_direct(r.mean(), shift, -delta, tau);
    EXPECT_NEAR(std::abs(a - b), 0.0, 1e-13);
  }
}

TEST(LambdaUnbalanced, RateSwapConjugates) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rate(0.05, 10), time(0, 20);
  for (int i = 0; i < 200; ++i) {
    const SwitchingRates r(rate(rng), rate(rng));
    const double tau = time(rng);
    const Complex a = lambda_unbalanced(2, r, tau);
    const Complex b = lambda_unbalanced(2, r.swapped(), tau);
    EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(a), std::abs(b), 1e-13);
  }
}

TEST(LambdaUnbalanced, ModulusBoundedOnGrid) {
  for (double g0 = 0.05; g0 <= 10.0; g0 += 0.45)
    for (double g1 = 0.05; g1 <= 10.0; g1 += 0.45)
      for (double tau = 0.0; tau <= 20.0; tau += 0.05)
        for (double n : {2.0, 4.0}) ASSERT_LE(std::abs(lambda_unbalanced(n, SwitchingRates(g0, g1), tau)), 1.0 + 1e-12);
}

TEST(LambdaUnbalanced, ExactlyOneAtZero) {
  EXPECT_EQ(lambda_unbalanced(2, SwitchingRates(1, 3), 0.0), Complex(1, 0));
  EXPECT_EQ(lambda_unbalanced(4, SwitchingRates(7, 0.1), 0.0), Complex(1, 0));
}

TEST(LambdaUnbalanced, LargeArgumentsStayFinite) {
  const Complex l = lambda_unbalanced(2, SwitchingRates(500, 0.01), 200);
  EXPECT_TRUE(std::isfinite(l.real()) && std::isfinite(l.imag()));
  EXPECT_LE(std::abs(l), 1.0);
}

TEST(LambdaNearDegenerate, AnalyticLimit) {
  for (double g : {0.5, 2.0, 3.0}) {
    const double tau = 1.7;
    const Complex l = lambda_near_degenerate(g, SwitchingRates(g, g), tau);
    EXPECT_NEAR(l.real(), std::exp(-g * tau) * (1 + g * tau), 1e-15);
  }
  EXPECT_NEAR(lambda_near_degenerate(2, SwitchingRates(2, 2), 3).real(), 7 * std::exp(-6.0), 1e-16);
  EXPECT_NEAR(lambda_near_degenerate(2, SwitchingRates(2, 2), 3).real(), 0.017351, 5e-7);
}

TEST(LambdaNearDegenerate, ContinuousAcrossThreshold) {
  const double g = 2.0 + 1e-9;
  const Complex series = lambda_near_degenerate(2, SwitchingRates(g, g), 1.0);
  const Complex direct = oracles::feynman_kac_lambda(2, g, g, 1.0);
  EXPECT_NEAR(std::abs(series - direct) / std::abs(direct), 0.0, 1e-10);
  // Straddle |delta tau| = 1e-4 from both sides.
  for (double scale : {0.999, 1.001}) {
    const double d = scale * kDegenerateThreshold;
    const double gamma = std::sqrt(4.0 + d * d);
    const Complex closed = lambda_unbalanced(2, SwitchingRates(gamma, gamma), 1.0);
    EXPECT_NEAR(std::abs(closed - oracles::feynman_kac_lambda(2, gamma, gamma, 1.0)), 0.0, 1e-13);
  }
  EXPECT_THROW(lambda_near_degenerate(2, SwitchingRates(5, 5), 1.0), std::invalid_argument);
}

TEST(LambdaDerivative, MatchesFiniteDifference) {
  const SwitchingRates r(0.6, 1.9);
  for (double tau : {0.2, 1.5, 6.0}) {
    const double h = 1e-5;
    const Complex fd = (lambda_unbalanced(2, r, tau + h) - lambda_unbalanced(2, r, tau - h)) / (2 * h);
    EXPECT_NEAR(std::abs(lambda_derivative(2, r, tau) - fd), 0.0, 1e-8);
  }
}

TEST(LambdaSelect, BalancedFlag) {
  EXPECT_EQ(lambda_select(2, SwitchingRates(1, 1), 2, true), lambda_balanced(2, 1, 2));
  EXPECT_THROW(lambda_select(2, SwitchingRates(1, 2), 2, true), InvalidRates);
}

TEST(ProcessAverage, Entries) {
  const SwitchingRates r(1, 3);
  const double tau = 0.7;
  EXPECT_EQ(process_average(PhaseAverage::DiffPlus, Coupling::Common, NoiseBalance::Unbalanced, r, tau), Complex(1, 0));
  EXPECT_EQ(process_average(PhaseAverage::DiffMinus, Coupling::Common, NoiseBalance::Unbalanced, r, tau), Complex(1, 0));
  const Complex sp = process_average(PhaseAverage::SumPlus, Coupling::Independent, NoiseBalance::Unbalanced, r, tau);
  const Complex sm = process_average(PhaseAverage::SumMinus, Coupling::Independent, NoiseBalance::Unbalanced, r, tau);
  EXPECT_NEAR(std::abs(sp), std::abs(sm), 1e-15);
  EXPECT_NEAR(std::abs(sm - std::conj(sp)), 0.0, 1e-15);

  const double g = 1.4;
  const SwitchingRates b(g, g);
  const Complex ie = process_average(PhaseAverage::SumPlus, Coupling::Independent, NoiseBalance::Unbalanced, b, tau);
  EXPECT_NEAR(ie.real(), std::pow(lambda_balanced(2, g, tau).real(), 2), 1e-14);
  const Complex ce = process_average(PhaseAverage::SumPlus, Coupling::Common, NoiseBalance::Balanced, b, tau);
  EXPECT_NEAR(ce.real(), lambda_balanced(4, g, tau).real(), 1e-14);
  const Complex diff =
      process_average(PhaseAverage::DiffMinus, Coupling::Independent, NoiseBalance::Unbalanced, r, tau);
  EXPECT_NEAR(diff.real(), std::norm(lambda_unbalanced(2, r, tau)), 1e-15);
  EXPECT_NEAR(diff.imag(), 0.0, 1e-15);
}

TEST(ProcessAverage, MatchesPairedMonteCarlo) {
  // Common environment: one phase. SumPlus -> E[e^{4 i phi}].
  const SwitchingRates r(0.8, 2.2);
  const double tau = 0.9;
  const TrajectoryConfig cfg{200000, 99, tau};
  const McEstimate mc = mc_characteristic(4, r, tau, cfg);
  EXPECT_TRUE(mc.agrees_with(process_average(PhaseAverage::SumPlus, Coupling::Common, NoiseBalance::Unbalanced, r, tau)));
}

TEST(Telegraph, SubstreamsAreDistinct) {
  EXPECT_NE(substream_seed(1, 0), substream_seed(1, 1));
  EXPECT_NE(substream_seed(1, 0), substream_seed(2, 0));
  SplitMix64 a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
  SplitMix64 u(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
  }
}

TEST(Telegraph, TrajectoryPhase) {
  const Trajectory t(+1, {0.5, 1.5}, 3.0);
  EXPECT_EQ(t.level_at(0.2), 1);
  EXPECT_EQ(t.level_at(1.0), -1);
  EXPECT_EQ(t.level_at(2.0), 1);
  EXPECT_DOUBLE_EQ(t.phase(0.0), 0.0);
  EXPECT_DOUBLE_EQ(t.phase(3.0), 0.5 - 1.0 + 1.5);
  EXPECT_DOUBLE_EQ(t.time_at_plus(), 2.0);
  EXPECT_THROW(t.phase(3.5), RangeError);
}

TEST(Telegraph, ConfigValidation) {
  EXPECT_THROW((TrajectoryConfig{0, 1, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((TrajectoryConfig{10, 1, -1.0}.validate()), std::invalid_argument);
  EXPECT_THROW(mc_characteristic(2, SwitchingRates(1, 1), 2.0, TrajectoryConfig{10, 1, 1.0}), RangeError);
}

TEST(Telegraph, PhaseAgreesWithStoredTrajectory) {
  const SwitchingRates r(1.2, 0.4);
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Trajectory t = sample_trajectory(r, 2.0, 17, i);
    EXPECT_NEAR(t.phase(2.0), sample_phase(r, 2.0, 17, i), 1e-12);
  }
}

TEST(Telegraph, StationaryOccupation) {
  // Level +1 is left at rate gamma1, so it is occupied a fraction gamma0 / (gamma0 + gamma1) of the time.
  const SwitchingRates r(1.0, 3.0);
  const double horizon = 400.0;
  const TrajectoryEnsemble e = mc_sample(r, TrajectoryConfig{400, 5, horizon});
  double sum = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double f = e[i].time_at_plus() / horizon;
    sum += f;
    sq += f * f;
  }
  const double n = static_cast<double>(e.size());
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / (n - 1));
  EXPECT_NEAR(mean, 0.25, 3 * se);
}

TEST(Telegraph, InitialLevelUnbiased) {
  const TrajectoryEnsemble e = mc_sample(SwitchingRates(2, 5), TrajectoryConfig{20000, 8, 0.1});
  double sum = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) sum += e[i].initial_level();
  const double n = static_cast<double>(e.size());
  EXPECT_NEAR(sum / n, 0.0, 3.0 / std::sqrt(n));
}

TEST(McCharacteristic, ZeroTimeIsExact) {
  const McEstimate e = mc_characteristic(3.7, SwitchingRates(1, 2), 0.0, TrajectoryConfig{1000, 1, 1.0});
  EXPECT_EQ(e.estimate, Complex(1, 0));
  EXPECT_EQ(e.std_error_re, 0.0);
  EXPECT_EQ(e.std_error_im, 0.0);
}

TEST(McCharacteristic, AgreesWithClosedForm) {
  const SwitchingRates r(1, 5);
  const McEstimate e = mc_characteristic(4, r, 1.0, TrajectoryConfig{200000, 21, 1.0});
  EXPECT_TRUE(e.agrees_with(lambda_unbalanced(4, r, 1.0))) << e.estimate;
}

TEST(McCharacteristic, IndependentOfThreadCount) {
  const SwitchingRates r(0.7, 2.1);
  const TrajectoryConfig cfg{30000, 4, 2.0};
  const McEstimate a = mc_characteristic(2, r, 1.3, cfg, 1);
  const McEstimate b = mc_characteristic(2, r, 1.3, cfg, 3);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.std_error_re, b.std_error_re);
  EXPECT_EQ(a.std_error_im, b.std_error_im);
}

}  // namespace
}  // namespace rtnq
