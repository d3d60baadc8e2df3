#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "twirlkey/qubit_algebra.hpp"

namespace twirlkey {

// An element of SU(2): unitary and det = 1, both to 1e-12.
class HaarSample {
 public:
  explicit HaarSample(const Matrix2& u);
  const Matrix2& matrix() const noexcept { return u_; }

 private:
  Matrix2 u_;
};

// Haar-distributed SU(2) element from a uniformly random unit quaternion
// (four standard normals, normalized).
HaarSample haar_su2(std::mt19937_64& rng);

// (U x U*) rho (U x U*)^dagger, with U* the entrywise conjugate.
TwoQubitState conjugate_pair_apply(const TwoQubitState& rho, const HaarSample& u);

// Exact U x U* twirl: the Werner state with the same Phi+ fidelity.
TwoQubitState twirl_analytic(const TwoQubitState& rho);

// (1/2) sum |eigenvalues(a - b)|
double trace_distance(const TwoQubitState& a, const TwoQubitState& b);

struct TwirlReport {
  TwoQubitState result;
  std::size_t n_samples = 0;
  double trace_distance_to_analytic = 0.0;
};

// Samples per independently seeded chunk of the Monte Carlo average.
inline constexpr std::size_t kTwirlChunkSize = 4096;

// Mean of conjugate_pair_apply over n Haar samples. Samples are split into
// fixed chunks of kTwirlChunkSize, chunk k drawing from a generator seeded by
// (seed, k); partial sums are reduced in chunk order, so the result is
// bit-identical for any worker count (0 = hardware concurrency).
TwirlReport twirl_monte_carlo(const TwoQubitState& rho, std::size_t n, std::uint64_t seed,
                              unsigned workers = 1);

}  // namespace twirlkey
