#include "twirlkey/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "twirlkey/error.hpp"

namespace twirlkey {
namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kProbabilityFloor = -1e-10;
constexpr double kDegenerateRow = 1e-12;

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int sample_outcome(const OutcomeDistribution& w, double u) {
  if (u < w.pp) return 0;
  if (u < w.pp + w.pm) return 1;
  if (u < w.pp + w.pm + w.mp) return 2;
  return 3;
}

ProtocolRun run_protocol(const TwoQubitState& rho, std::size_t n_rounds, std::uint64_t seed,
                         const ProtocolSettings& s, bool diagnostic) {
  if (n_rounds == 0) throw Error(ErrorCode::kOutOfRange, "n_rounds must be >= 1");

  const std::array<const MeasurementSetting*, 2> alice{&s.a, &s.a_prime};
  const std::array<const MeasurementSetting*, 2> bob{&s.b, &s.b_prime};
  std::array<std::array<OutcomeDistribution, 2>, 2> dist;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) dist[i][j] = outcome_probs(rho, *alice[i], *bob[j]);

  ProtocolRun run;
  run.n_rounds = n_rounds;
  run.diagnostic = diagnostic;
  run.alice_bases.resize(n_rounds);
  run.bob_bases.resize(n_rounds);
  run.alice_bits.resize(n_rounds);
  run.bob_bits.resize(n_rounds);

  std::mt19937_64 rng(seed);
  std::size_t mismatch_x = 0;
  std::size_t mismatch_y = 0;
  for (std::size_t r = 0; r < n_rounds; ++r) {
    const std::uint64_t choice = rng();
    const std::uint8_t ab = choice & 1u;
    const std::uint8_t bb = (choice >> 1) & 1u;
    const int outcome = sample_outcome(dist[ab][bb], uniform01(rng));
    const std::int8_t abit = (outcome < 2) ? 1 : -1;
    const std::int8_t bbit = (outcome % 2 == 0) ? 1 : -1;
    run.alice_bases[r] = ab;
    run.bob_bases[r] = bb;
    run.alice_bits[r] = abit;
    run.bob_bits[r] = bbit;
    if (ab == bb) {
      run.sifted_indices.push_back(r);
      const bool differ = abit != bbit;
      if (ab == 0) {
        ++run.sifted_x;
        mismatch_x += differ;
      } else {
        ++run.sifted_y;
        mismatch_y += differ;
      }
    }
  }

  const std::size_t m = run.sifted_indices.size();
  if (m == 0) {
    throw Error(ErrorCode::kEmptySiftedSet,
                "no round survived sifting out of " + std::to_string(n_rounds));
  }
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  run.empirical_delta_x = run.sifted_x ? double(mismatch_x) / double(run.sifted_x) : nan;
  run.empirical_delta_y = run.sifted_y ? double(mismatch_y) / double(run.sifted_y) : nan;
  run.empirical_delta = double(mismatch_x + mismatch_y) / double(m);
  return run;
}

}  // namespace

MeasurementSetting::MeasurementSetting(const Vector3& n) : n_(n) {
  const double norm = n.norm();
  if (!(std::abs(norm - 1.0) <= kUnitTol)) {
    throw Error(ErrorCode::kNotUnitVector, "|n| = " + std::to_string(norm));
  }
}

MeasurementSetting MeasurementSetting::along(const Vector3& v) {
  const double norm = v.norm();
  if (!(norm > 1e-12) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kNotUnitVector, "cannot normalize a zero direction");
  }
  return MeasurementSetting(v / norm);
}

double correlation(const TwoQubitState& rho, const MeasurementSetting& a,
                   const MeasurementSetting& b) {
  return a.direction().dot(rho.correlations() * b.direction());
}

OutcomeDistribution outcome_probs(const TwoQubitState& rho, const MeasurementSetting& a,
                                  const MeasurementSetting& b) {
  const double ea = a.direction().dot(rho.bloch_a());
  const double eb = b.direction().dot(rho.bloch_b());
  const double eab = correlation(rho, a, b);
  auto prob = [&](double s, double t) {
    const double w = 0.25 * (1.0 + s * ea + t * eb + s * t * eab);
    if (w < kProbabilityFloor) {
      throw Error(ErrorCode::kNotADistribution, "outcome probability " + std::to_string(w));
    }
    return std::clamp(w, 0.0, 1.0);
  };
  return OutcomeDistribution{prob(1, 1), prob(1, -1), prob(-1, 1), prob(-1, -1)};
}

OptimalPartner optimal_partner(const TwoQubitState& rho, const MeasurementSetting& a) {
  const Vector3 v = rho.correlations().transpose() * a.direction();
  const double value = v.norm();
  if (value < kDegenerateRow) return OptimalPartner{MeasurementSetting::x(), 0.0, true};
  return OptimalPartner{MeasurementSetting::along(v), value, false};
}

double error_rate(const TwoQubitState& rho, const MeasurementSetting& b,
                  const MeasurementSetting& b_prime) {
  return 0.5 - 0.25 * (correlation(rho, MeasurementSetting::x(), b) +
                       correlation(rho, MeasurementSetting::y(), b_prime));
}

MinErrorRate min_error_rate(const TwoQubitState& rho) {
  const OptimalPartner px = optimal_partner(rho, MeasurementSetting::x());
  const OptimalPartner py = optimal_partner(rho, MeasurementSetting::y());
  MinErrorRate out{0.5 - 0.25 * (px.value + py.value),
                   0.5 * (1.0 - px.value),
                   0.5 * (1.0 - py.value),
                   px.setting,
                   py.setting,
                   px.degenerate,
                   py.degenerate};
  return out;
}

ProtocolRun simulate_protocol(const TwoQubitState& rho, std::size_t n_rounds, std::uint64_t seed,
                              const MeasurementSetting& b, const MeasurementSetting& b_prime) {
  return run_protocol(rho, n_rounds, seed,
                      ProtocolSettings{MeasurementSetting::x(), MeasurementSetting::y(), b, b_prime},
                      false);
}

ProtocolRun simulate_protocol_diagnostic(const TwoQubitState& rho, std::size_t n_rounds,
                                         std::uint64_t seed, const ProtocolSettings& settings) {
  return run_protocol(rho, n_rounds, seed, settings, true);
}

double random_key_bias(const ProtocolRun& run) {
  std::array<std::array<std::size_t, 2>, 2> total{};
  std::array<std::array<std::size_t, 2>, 2> plus{};
  for (std::size_t r = 0; r < run.n_rounds; ++r) {
    ++total[0][run.alice_bases[r]];
    plus[0][run.alice_bases[r]] += run.alice_bits[r] > 0;
    ++total[1][run.bob_bases[r]];
    plus[1][run.bob_bases[r]] += run.bob_bits[r] > 0;
  }
  double bias = 0.0;
  for (int party = 0; party < 2; ++party)
    for (int basis = 0; basis < 2; ++basis) {
      if (total[party][basis] == 0) continue;
      const double f = double(plus[party][basis]) / double(total[party][basis]);
      bias = std::max(bias, std::abs(f - 0.5));
    }
  return bias;
}

std::string sifted_key(const ProtocolRun& run, Party party) {
  const auto& bits = party == Party::kAlice ? run.alice_bits : run.bob_bits;
  std::string key;
  key.reserve(run.sifted_indices.size());
  for (std::size_t r : run.sifted_indices) key.push_back(bits[r] > 0 ? '+' : '-');
  return key;
}

void write_rounds_csv(std::ostream& out, const ProtocolRun& run) {
  out << "round,alice_basis,bob_basis,alice_bit,bob_bit,sifted\n";
  for (std::size_t r = 0; r < run.n_rounds; ++r) {
    out << r << ',' << (run.alice_bases[r] == 0 ? "x" : "y") << ','
        << (run.bob_bases[r] == 0 ? "b" : "bp") << ',' << int(run.alice_bits[r]) << ','
        << int(run.bob_bits[r]) << ',' << (run.alice_bases[r] == run.bob_bases[r] ? 1 : 0)
        << '\n';
  }
}

}  // namespace twirlkey
