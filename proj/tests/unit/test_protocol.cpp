#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "twirlkey/error.hpp"
#include "twirlkey/protocol.hpp"
#include "twirlkey/states.hpp"

using namespace twirlkey;

namespace {

constexpr double kPi = std::numbers::pi;

Vector3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector3 v(g(rng), g(rng), g(rng));
  return v.normalized();
}

double four_sigma(double delta, std::size_t m) { return 4.0 * std::sqrt(delta * (1 - delta) / m); }

}  // namespace

TEST(MeasurementSetting, RequiresUnitVector) {
  EXPECT_THROW(MeasurementSetting(Vector3(1, 1, 0)), Error);
  EXPECT_NO_THROW(MeasurementSetting(Vector3(0.6, 0.8, 0)));
  EXPECT_THROW(MeasurementSetting::along(Vector3::Zero()), Error);
  EXPECT_NEAR(MeasurementSetting::along(Vector3(3, 4, 0)).direction()(1), 0.8, 1e-15);
}

TEST(Correlation, Examples) {
  const auto x = MeasurementSetting::x();
  EXPECT_NEAR(correlation(bell(BellKind::kPhiPlus), x, x), 1.0, 1e-15);
  for (double g : {0.0, 0.4, kPi / 3, kPi / 2}) {
    EXPECT_NEAR(correlation(pure_state(g), x, x), std::cos(g), 1e-15);
  }
  for (double f : {0.0, 0.25, 0.75, 1.0}) {
    EXPECT_NEAR(correlation(werner(WernerFidelity(f)), x, x), (4 * f - 1) / 3, 1e-15);
  }
}

TEST(Correlation, MatchesTraceFormula) {
  std::mt19937_64 rng(1);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const TwoQubitState rho = random_state(s);
    const Vector3 a = random_unit(rng);
    const Vector3 b = random_unit(rng);
    const Matrix4 op = oracle::kron(oracle::spin(a), oracle::spin(b));
    EXPECT_NEAR(correlation(rho, MeasurementSetting(a), MeasurementSetting(b)),
                oracle::trace_product(rho.rho(), op).real(), 1e-12);
  }
}

TEST(OutcomeProbs, Examples) {
  const auto x = MeasurementSetting::x();
  const OutcomeDistribution mixed = outcome_probs(maximally_mixed(), x, MeasurementSetting::z());
  EXPECT_NEAR(mixed.pp, 0.25, 1e-15);
  EXPECT_NEAR(mixed.mm, 0.25, 1e-15);
  const OutcomeDistribution phi = outcome_probs(bell(BellKind::kPhiPlus), x, x);
  EXPECT_NEAR(phi.pp, 0.5, 1e-15);
  EXPECT_NEAR(phi.mm, 0.5, 1e-15);
  EXPECT_NEAR(phi.pm, 0.0, 1e-15);
  EXPECT_NEAR(phi.mp, 0.0, 1e-15);
  const double g = 0.9;
  const OutcomeDistribution om = outcome_probs(pure_state(g), x, x);
  EXPECT_NEAR(om.pm, (1 - std::cos(g)) / 4, 1e-15);
  EXPECT_NEAR(om.mp, (1 - std::cos(g)) / 4, 1e-15);
}

TEST(OutcomeProbs, MatchesBornRuleClosureAndCorrelation) {
  std::mt19937_64 rng(2);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const TwoQubitState rho = random_state(s);
    const Vector3 a = random_unit(rng);
    const Vector3 b = random_unit(rng);
    const MeasurementSetting ma(a);
    const MeasurementSetting mb(b);
    const OutcomeDistribution w = outcome_probs(rho, ma, mb);
    EXPECT_NEAR(w.pp, oracle::born(rho.rho(), a, b, 1, 1), 1e-12);
    EXPECT_NEAR(w.pm, oracle::born(rho.rho(), a, b, 1, -1), 1e-12);
    EXPECT_NEAR(w.mp, oracle::born(rho.rho(), a, b, -1, 1), 1e-12);
    EXPECT_NEAR(w.mm, oracle::born(rho.rho(), a, b, -1, -1), 1e-12);
    EXPECT_NEAR(w.pp + w.pm + w.mp + w.mm, 1.0, 1e-12);
    for (double p : {w.pp, w.pm, w.mp, w.mm}) {
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
    EXPECT_NEAR(w.correlation(), correlation(rho, ma, mb), 1e-12);
  }
}

TEST(OptimalPartner, PureStateSettings) {
  const TwoQubitState rho = pure_state(0.6);
  const OptimalPartner px = optimal_partner(rho, MeasurementSetting::x());
  EXPECT_LT((px.setting.direction() - Vector3(1, 0, 0)).norm(), 1e-15);
  EXPECT_NEAR(px.value, std::cos(0.6), 1e-15);
  const OptimalPartner py = optimal_partner(rho, MeasurementSetting::y());
  EXPECT_LT((py.setting.direction() - Vector3(0, -1, 0)).norm(), 1e-15);
  EXPECT_NEAR(py.value, std::cos(0.6), 1e-15);
  EXPECT_FALSE(px.degenerate);
}

TEST(OptimalPartner, DegenerateRow) {
  const OptimalPartner p = optimal_partner(pure_state(kPi / 2), MeasurementSetting::x());
  EXPECT_TRUE(p.degenerate);
  EXPECT_EQ(p.value, 0.0);
  EXPECT_LT((p.setting.direction() - Vector3(1, 0, 0)).norm(), 1e-15);
}

TEST(OptimalPartner, BruteForceMaximality) {
  std::mt19937_64 rng(3);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const TwoQubitState rho = random_state(s);
    for (int i = 0; i < 20; ++i) {
      const MeasurementSetting a(random_unit(rng));
      const OptimalPartner best = optimal_partner(rho, a);
      EXPECT_NEAR(correlation(rho, a, best.setting), best.value, 1e-12);
      for (int j = 0; j < 100; ++j) {
        const double c = correlation(rho, a, MeasurementSetting(random_unit(rng)));
        ASSERT_GE(best.value, c - 1e-12);
      }
    }
  }
}

TEST(OptimalPartner, ValueIsRowNorm) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const TwoQubitState rho = random_state(s);
    EXPECT_NEAR(optimal_partner(rho, MeasurementSetting::x()).value, rho.correlations().row(0).norm(),
                1e-12);
    EXPECT_NEAR(optimal_partner(rho, MeasurementSetting::y()).value, rho.correlations().row(1).norm(),
                1e-12);
  }
}

TEST(ErrorRate, Examples) {
  const MeasurementSetting b = MeasurementSetting::x();
  const MeasurementSetting bp(Vector3(0, -1, 0));
  EXPECT_NEAR(error_rate(bell(BellKind::kPhiPlus), b, bp), 0.0, 1e-15);
  for (int i = 0; i < 50; ++i) {
    const double g = (i + 1) * (kPi / 2) / 50;
    EXPECT_NEAR(error_rate(pure_state(g), b, bp), std::pow(std::sin(g / 2), 2), 1e-12);
    const WernerFidelity f(std::pow(std::cos(g / 2), 2));
    EXPECT_NEAR(error_rate(werner(f), b, bp), 2.0 / 3.0 * std::pow(std::sin(g / 2), 2), 1e-12);
  }
}

TEST(MinErrorRate, Examples) {
  EXPECT_NEAR(min_error_rate(pure_state(kPi / 3)).delta, 0.25, 1e-12);
  EXPECT_NEAR(min_error_rate(werner(WernerFidelity(0.75))).delta, 1.0 / 6.0, 1e-12);
  const MinErrorRate mixed = min_error_rate(maximally_mixed());
  EXPECT_NEAR(mixed.delta, 0.5, 1e-15);
  EXPECT_NEAR(mixed.delta_x, 0.5, 1e-15);
  EXPECT_TRUE(mixed.degenerate_x);
  EXPECT_TRUE(mixed.degenerate_y);
}

TEST(MinErrorRate, NoBetterSettingsExist) {
  std::mt19937_64 rng(4);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const TwoQubitState rho = random_state(s);
    const MinErrorRate best = min_error_rate(rho);
    EXPECT_NEAR(error_rate(rho, best.b, best.b_prime), best.delta, 1e-12);
    EXPECT_NEAR(best.delta, 0.5 * (best.delta_x + best.delta_y), 1e-15);
    for (int j = 0; j < 100; ++j) {
      const double d = error_rate(rho, MeasurementSetting(random_unit(rng)),
                                  MeasurementSetting(random_unit(rng)));
      ASSERT_GE(d, best.delta - 1e-12);
    }
  }
}

TEST(Simulator, BellStateHasNoErrors) {
  const TwoQubitState rho = bell(BellKind::kPhiPlus);
  const MinErrorRate opt = min_error_rate(rho);
  const ProtocolRun run = simulate_protocol(rho, 100000, 1, opt.b, opt.b_prime);
  EXPECT_EQ(run.empirical_delta, 0.0);
  EXPECT_EQ(sifted_key(run, Party::kAlice), sifted_key(run, Party::kBob));
}

TEST(Simulator, SiftingBookkeeping) {
  const TwoQubitState rho = pure_state(0.7);
  const MinErrorRate opt = min_error_rate(rho);
  const ProtocolRun run = simulate_protocol(rho, 5000, 3, opt.b, opt.b_prime);
  std::size_t expected = 0;
  std::size_t k = 0;
  std::size_t mis_x = 0;
  std::size_t mis_y = 0;
  for (std::size_t r = 0; r < run.n_rounds; ++r) {
    if (run.alice_bases[r] != run.bob_bases[r]) continue;
    ++expected;
    ASSERT_LT(k, run.sifted_indices.size());
    EXPECT_EQ(run.sifted_indices[k++], r);
    const bool differ = run.alice_bits[r] != run.bob_bits[r];
    (run.alice_bases[r] == 0 ? mis_x : mis_y) += differ;
  }
  EXPECT_EQ(run.sifted_indices.size(), expected);
  EXPECT_EQ(run.sifted_x + run.sifted_y, expected);
  const double weighted = (run.empirical_delta_x * run.sifted_x + run.empirical_delta_y * run.sifted_y) /
                          double(expected);
  EXPECT_NEAR(run.empirical_delta, weighted, 1e-15);
  EXPECT_DOUBLE_EQ(run.empirical_delta, double(mis_x + mis_y) / double(expected));
}

TEST(Simulator, DeterministicForSeed) {
  const TwoQubitState rho = random_state(2);
  const MinErrorRate opt = min_error_rate(rho);
  const ProtocolRun a = simulate_protocol(rho, 2000, 9, opt.b, opt.b_prime);
  const ProtocolRun b = simulate_protocol(rho, 2000, 9, opt.b, opt.b_prime);
  EXPECT_EQ(a.alice_bits, b.alice_bits);
  EXPECT_EQ(a.bob_bits, b.bob_bits);
  EXPECT_EQ(a.alice_bases, b.alice_bases);
  const ProtocolRun c = simulate_protocol(rho, 2000, 10, opt.b, opt.b_prime);
  EXPECT_NE(a.alice_bits, c.alice_bits);
}

TEST(Simulator, FourSigmaGateAcrossSeeds) {
  for (const TwoQubitState& rho : {pure_state(kPi / 3), werner(WernerFidelity(0.75))}) {
    const MinErrorRate opt = min_error_rate(rho);
    int failures = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const ProtocolRun run = simulate_protocol(rho, 20000, seed, opt.b, opt.b_prime);
      const std::size_t m = run.sifted_indices.size();
      if (std::abs(run.empirical_delta - opt.delta) > four_sigma(opt.delta, m)) ++failures;
    }
    EXPECT_LE(failures, 1);
  }
}

TEST(Simulator, LargeRunAnchors) {
  const std::pair<TwoQubitState, double> cases[] = {{pure_state(kPi / 3), 0.25},
                                                    {werner(WernerFidelity(0.75)), 1.0 / 6.0},
                                                    {maximally_mixed(), 0.5}};
  for (const auto& [rho, delta] : cases) {
    const MinErrorRate opt = min_error_rate(rho);
    const ProtocolRun run = simulate_protocol(rho, 1000000, 42, opt.b, opt.b_prime);
    const std::size_t m = run.sifted_indices.size();
    EXPECT_NEAR(run.empirical_delta, delta, four_sigma(delta, m));
    EXPECT_LE(random_key_bias(run), 4.0 * std::sqrt(1.0 / (4.0 * m)));
  }
}

TEST(Simulator, DiagnosticZBias) {
  Matrix4 up = Matrix4::Zero();
  up(0, 0) = 1.0;
  const auto z = MeasurementSetting::z();
  const ProtocolRun run =
      simulate_protocol_diagnostic(validate_density(up), 1000, 5, ProtocolSettings{z, z, z, z});
  EXPECT_TRUE(run.diagnostic);
  EXPECT_EQ(random_key_bias(run), 0.5);
  EXPECT_EQ(run.empirical_delta, 0.0);
}

TEST(Simulator, EmptySiftedSet) {
  const TwoQubitState rho = maximally_mixed();
  const auto x = MeasurementSetting::x();
  int thrown = 0;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    try {
      const ProtocolRun run = simulate_protocol(rho, 1, seed, x, x);
      EXPECT_EQ(run.sifted_indices.size(), 1u);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kEmptySiftedSet);
      ++thrown;
    }
  }
  EXPECT_GT(thrown, 0);
  EXPECT_LT(thrown, 64);
  EXPECT_THROW(simulate_protocol(rho, 0, 1, x, x), Error);
}

TEST(Simulator, PerBasisRateIsNanWhenUnused) {
  const auto x = MeasurementSetting::x();
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    try {
      const ProtocolRun run = simulate_protocol(maximally_mixed(), 1, seed, x, x);
      EXPECT_TRUE(std::isnan(run.sifted_x ? run.empirical_delta_y : run.empirical_delta_x));
    } catch (const Error&) {
    }
  }
}

TEST(SiftedKey, Symbols) {
  const TwoQubitState rho = pure_state(0.3);
  const MinErrorRate opt = min_error_rate(rho);
  const ProtocolRun run = simulate_protocol(rho, 200, 8, opt.b, opt.b_prime);
  const std::string key = sifted_key(run, Party::kBob);
  EXPECT_EQ(key.size(), run.sifted_indices.size());
  EXPECT_EQ(key.find_first_not_of("+-"), std::string::npos);
  for (std::size_t i = 0; i < key.size(); ++i) {
    EXPECT_EQ(key[i] == '+', run.bob_bits[run.sifted_indices[i]] > 0);
  }
}

TEST(RoundsCsv, HeaderAndRows) {
  const TwoQubitState rho = pure_state(0.3);
  const MinErrorRate opt = min_error_rate(rho);
  const ProtocolRun run = simulate_protocol(rho, 50, 8, opt.b, opt.b_prime);
  std::ostringstream out;
  write_rounds_csv(out, run);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "round,alice_basis,bob_basis,alice_bit,bob_bit,sifted");
  int rows = 0;
  while (std::getline(in, line)) {
    const std::string prefix = std::to_string(rows) + ",";
    EXPECT_EQ(line.rfind(prefix, 0), 0u);
    ++rows;
  }
  EXPECT_EQ(rows, 50);
}
