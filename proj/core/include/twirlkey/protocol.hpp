#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "twirlkey/qubit_algebra.hpp"

namespace twirlkey {

// Bloch direction n of the spin observable sigma . n.
class MeasurementSetting {
 public:
  // Throws kNotUnitVector unless | |n| - 1 | <= 1e-12.
  explicit MeasurementSetting(const Vector3& n);

  // Normalizes v; throws kNotUnitVector for a (near) zero vector.
  static MeasurementSetting along(const Vector3& v);

  static MeasurementSetting x() { return MeasurementSetting(Vector3(1.0, 0.0, 0.0)); }
  static MeasurementSetting y() { return MeasurementSetting(Vector3(0.0, 1.0, 0.0)); }
  static MeasurementSetting z() { return MeasurementSetting(Vector3(0.0, 0.0, 1.0)); }

  const Vector3& direction() const noexcept { return n_; }

 private:
  Vector3 n_;
};

// Joint outcome probabilities; first sign is Alice's, second Bob's.
struct OutcomeDistribution {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;

  double mismatch() const { return pm + mp; }
  double correlation() const { return pp + mm - pm - mp; }
};

// <sigma_a x sigma_b> = a^T C b.
double correlation(const TwoQubitState& rho, const MeasurementSetting& a,
                   const MeasurementSetting& b);

// Born-rule probabilities. Throws kNotADistribution if any probability is below
// -1e-10; tiny negative rounding is clamped to zero.
OutcomeDistribution outcome_probs(const TwoQubitState& rho, const MeasurementSetting& a,
                                  const MeasurementSetting& b);

struct OptimalPartner {
  MeasurementSetting setting;
  double value = 0.0;
  // C^T a vanished; every b is optimal and `setting` is (1, 0, 0).
  bool degenerate = false;
};

// Bob's direction maximizing a^T C b, namely C^T a / |C^T a|, with value |C^T a|.
OptimalPartner optimal_partner(const TwoQubitState& rho, const MeasurementSetting& a);

// Average key error rate with Alice on x / y and Bob on b / b_prime:
//   1/2 - (<x b> + <y b'>) / 4.
double error_rate(const TwoQubitState& rho, const MeasurementSetting& b,
                  const MeasurementSetting& b_prime);

struct MinErrorRate {
  double delta = 0.0;
  double delta_x = 0.0;  // (1 - |row 1 of C|) / 2
  double delta_y = 0.0;  // (1 - |row 2 of C|) / 2
  MeasurementSetting b;
  MeasurementSetting b_prime;
  bool degenerate_x = false;
  bool degenerate_y = false;
};

MinErrorRate min_error_rate(const TwoQubitState& rho);

enum class Party { kAlice, kBob };

// Per-round basis index: 0 is the first setting (x for Alice, b for Bob),
// 1 the second (y, b').
struct ProtocolRun {
  std::size_t n_rounds = 0;
  std::vector<std::uint8_t> alice_bases;
  std::vector<std::uint8_t> bob_bases;
  std::vector<std::int8_t> alice_bits;  // +1 / -1
  std::vector<std::int8_t> bob_bits;
  std::vector<std::size_t> sifted_indices;
  std::size_t sifted_x = 0;  // rounds kept with pairing (x, b)
  std::size_t sifted_y = 0;  // rounds kept with pairing (y, b')
  double empirical_delta_x = 0.0;  // NaN when sifted_x == 0
  double empirical_delta_y = 0.0;  // NaN when sifted_y == 0
  double empirical_delta = 0.0;
  // Alice's settings were not the protocol's fixed x / y.
  bool diagnostic = false;
};

struct ProtocolSettings {
  MeasurementSetting a;
  MeasurementSetting a_prime;
  MeasurementSetting b;
  MeasurementSetting b_prime;
};

// Generalized EPR key generation. Each round Alice picks x or y and Bob picks
// b or b' uniformly, the outcome pair is drawn from outcome_probs, and the
// (x, b) and (y, b') rounds are kept. Bit-exact for a given seed.
// Throws kEmptySiftedSet if no round survives sifting.
ProtocolRun simulate_protocol(const TwoQubitState& rho, std::size_t n_rounds, std::uint64_t seed,
                              const MeasurementSetting& b, const MeasurementSetting& b_prime);

// Same procedure with arbitrary settings for Alice; the run is flagged
// diagnostic since it is outside the protocol.
ProtocolRun simulate_protocol_diagnostic(const TwoQubitState& rho, std::size_t n_rounds,
                                         std::uint64_t seed, const ProtocolSettings& settings);

// max over (party, basis) of |fraction of +1 outcomes - 1/2|, taken over every
// round in which that party used that basis.
double random_key_bias(const ProtocolRun& run);

// Sifted key of one party, '+' for +1 and '-' for -1.
std::string sifted_key(const ProtocolRun& run, Party party);

// round,alice_basis,bob_basis,alice_bit,bob_bit,sifted
// Basis labels are x / y for Alice and b / bp for Bob.
void write_rounds_csv(std::ostream& out, const ProtocolRun& run);

}  // namespace twirlkey
