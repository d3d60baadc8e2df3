#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "twirlkey/error.hpp"
#include "twirlkey/states.hpp"
#include "twirlkey/twirl.hpp"

using namespace twirlkey;

namespace {

constexpr double kPi = std::numbers::pi;

double max_diff(const Matrix4& a, const Matrix4& b) { return (a - b).cwiseAbs().maxCoeff(); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TEST(HaarSample, RejectsNonSu2) {
  EXPECT_THROW(HaarSample(2.0 * Matrix2::Identity()), Error);
  Matrix2 flip = pauli(Pauli::kX);  // unitary, det = -1
  EXPECT_THROW(HaarSample{flip}, Error);
  EXPECT_NO_THROW(HaarSample(Matrix2::Identity()));
}

TEST(HaarSample, DrawsAreSu2) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const Matrix2 u = haar_su2(rng).matrix();
    EXPECT_LT((u * u.adjoint() - Matrix2::Identity()).norm(), 1e-12);
    EXPECT_LT(std::abs(u.determinant() - 1.0), 1e-12);
  }
}

TEST(HaarSample, SecondMomentMatchesQuadrature) {
  // |U11|^2 = a^2 + b^2 for U built from the quaternion (a, b, c, d).
  const double expected =
      oracle::sphere3_average([](double a, double b, double, double) { return a * a + b * b; });
  ASSERT_NEAR(expected, 0.5, 1e-6);

  std::mt19937_64 rng(2024);
  const int n = 100000;
  double second = 0.0;
  Complex first = 0.0;
  for (int i = 0; i < n; ++i) {
    const Matrix2 u = haar_su2(rng).matrix();
    second += std::norm(u(0, 0));
    first += u(0, 0);
  }
  EXPECT_NEAR(second / n, expected, 0.01);
  EXPECT_LE(std::abs(first / double(n)), 0.01);
}

TEST(HaarSample, FourthMomentMatchesQuadrature) {
  const double expected = oracle::sphere3_average(
      [](double a, double b, double, double) { return std::pow(a * a + b * b, 2); });
  ASSERT_NEAR(expected, 1.0 / 3.0, 1e-4);  // midpoint rule error
  std::mt19937_64 rng(77);
  const int n = 100000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += std::pow(std::norm(haar_su2(rng).matrix()(0, 0)), 2);
  EXPECT_NEAR(acc / n, expected, 0.01);
}

TEST(ConjugatePair, LeavesWernerStatesInvariant) {
  std::mt19937_64 rng(11);
  const TwoQubitState phi = bell(BellKind::kPhiPlus);
  const TwoQubitState w = werner(WernerFidelity(0.6));
  for (int i = 0; i < 100; ++i) {
    const HaarSample u = haar_su2(rng);
    EXPECT_LT(max_diff(conjugate_pair_apply(phi, u).rho(), phi.rho()), 1e-12);
    EXPECT_LT(max_diff(conjugate_pair_apply(w, u).rho(), w.rho()), 1e-12);
  }
}

TEST(ConjugatePair, MatchesExplicitKron) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const TwoQubitState rho = random_state(i);
    const HaarSample u = haar_su2(rng);
    const Matrix4 k = oracle::kron(u.matrix(), u.matrix().conjugate());
    EXPECT_LT(max_diff(conjugate_pair_apply(rho, u).rho(), k * rho.rho() * k.adjoint()), 1e-14);
  }
}

TEST(TwirlAnalytic, Examples) {
  EXPECT_LT(max_diff(twirl_analytic(pure_state(kPi / 3)).rho(), werner(WernerFidelity(0.75)).rho()),
            1e-12);
  EXPECT_LT(max_diff(twirl_analytic(maximally_mixed()).rho(), maximally_mixed().rho()), 1e-15);
  EXPECT_LT(max_diff(twirl_analytic(bell(BellKind::kPsiMinus)).rho(),
                     werner(WernerFidelity(0.0)).rho()),
            1e-15);
}

TEST(TwirlAnalytic, IdempotentLinearAndFidelityPreserving) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const TwoQubitState a = random_state(s);
    const TwoQubitState b = random_state(s + 1000);
    const TwoQubitState ta = twirl_analytic(a);
    EXPECT_LT(max_diff(twirl_analytic(ta).rho(), ta.rho()), 1e-12);
    EXPECT_NEAR(fidelity_phi_plus(ta).value(), fidelity_phi_plus(a).value(), 1e-12);
    const double p = 0.3;
    const TwoQubitState mix = validate_density(p * a.rho() + (1 - p) * b.rho());
    const Matrix4 lin = p * ta.rho() + (1 - p) * twirl_analytic(b).rho();
    EXPECT_LT(max_diff(twirl_analytic(mix).rho(), lin), 1e-12);
  }
}

TEST(TraceDistance, Examples) {
  EXPECT_NEAR(trace_distance(bell(BellKind::kPhiPlus), bell(BellKind::kPsiMinus)), 1.0, 1e-12);
  EXPECT_NEAR(trace_distance(maximally_mixed(), bell(BellKind::kPhiPlus)), 0.75, 1e-12);
  EXPECT_NEAR(trace_distance(random_state(4), random_state(4)), 0.0, 1e-15);
}

TEST(TwirlMonteCarlo, WernerIsFixedPoint) {
  const TwoQubitState w = werner(WernerFidelity(0.6));
  const TwirlReport r = twirl_monte_carlo(w, 10000, 9);
  EXPECT_LE(trace_distance(r.result, w), 1e-12);
  EXPECT_EQ(r.n_samples, 10000u);
}

TEST(TwirlMonteCarlo, ConvergesForPureState) {
  const TwoQubitState omega = pure_state(kPi / 3);
  const TwirlReport r = twirl_monte_carlo(omega, 100000, 1);
  EXPECT_LE(r.trace_distance_to_analytic, 0.02);
  EXPECT_NEAR(r.trace_distance_to_analytic, trace_distance(r.result, werner(WernerFidelity(0.75))),
              1e-14);
}

TEST(TwirlMonteCarlo, InverseSqrtScaling) {
  const TwoQubitState omega = pure_state(kPi / 3);
  std::vector<double> small;
  std::vector<double> large;
  for (std::uint64_t s = 0; s < 20; ++s) {
    small.push_back(twirl_monte_carlo(omega, 5000, s, 0).trace_distance_to_analytic);
    large.push_back(twirl_monte_carlo(omega, 20000, s + 500, 0).trace_distance_to_analytic);
  }
  const double ratio = median(large) / median(small);
  EXPECT_GE(ratio, 0.35);
  EXPECT_LE(ratio, 0.7);
}

TEST(TwirlMonteCarlo, IndependentOfWorkerCount) {
  const TwoQubitState rho = random_state(8);
  const TwirlReport one = twirl_monte_carlo(rho, 3 * kTwirlChunkSize + 17, 123, 1);
  const TwirlReport four = twirl_monte_carlo(rho, 3 * kTwirlChunkSize + 17, 123, 4);
  EXPECT_EQ(max_diff(one.result.rho(), four.result.rho()), 0.0);
  const TwirlReport other = twirl_monte_carlo(rho, 3 * kTwirlChunkSize + 17, 124, 1);
  EXPECT_GT(max_diff(one.result.rho(), other.result.rho()), 0.0);
}

TEST(TwirlMonteCarlo, RejectsZeroSamples) {
  EXPECT_THROW(twirl_monte_carlo(maximally_mixed(), 0, 1), Error);
}

TEST(TwirlMonteCarlo, AgreesWithAnalyticOnRandomStates) {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    worst = std::max(worst, twirl_monte_carlo(random_state(s), 100000, s + 7).trace_distance_to_analytic);
  }
  EXPECT_LE(worst, 0.03);
}
