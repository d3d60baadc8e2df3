#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "twirlkey/qubit_algebra.hpp"

namespace twirlkey {

// Overlap with Phi+, constrained to [0, 1].
class WernerFidelity {
 public:
  explicit WernerFidelity(double f);
  double value() const noexcept { return f_; }

 private:
  double f_;
};

// Entries of a state whose only non-zero elements sit on the diagonal and the
// anti-diagonal:
//
//   [ p11          0            0           c14 e^{i a14} ]
//   [ 0            p22          c23 e^{i a23}  0          ]
//   [ 0            c23 e^{-i a23} p33        0            ]
//   [ c14 e^{-i a14} 0          0           p44           ]
struct XStateParams {
  double rho11 = 0.0;
  double rho22 = 0.0;
  double rho33 = 0.0;
  double rho44 = 0.0;
  double rho14 = 0.0;  // magnitude, >= 0
  double rho23 = 0.0;  // magnitude, >= 0
  double phase14 = 0.0;
  double phase23 = 0.0;
};

enum class BellKind { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

std::string_view to_string(BellKind kind);

// cos(pi/4 - g/2)|uu> + sin(pi/4 - g/2)|dd>, 0 <= g <= pi/2.
TwoQubitState pure_state(double gamma);

TwoQubitState werner(WernerFidelity f);

TwoQubitState bell(BellKind kind);

// Throws kInvalidXParams naming the violated constraint.
TwoQubitState x_state(const XStateParams& p);

// p * pure_state(gamma) + (1 - p) I/4.
TwoQubitState depolarized_pure(double gamma, double p);

TwoQubitState maximally_mixed();

WernerFidelity fidelity_phi_plus(const TwoQubitState& rho);

// Ginibre (Hilbert-Schmidt) random state: G G^dagger / Tr(G G^dagger) with G
// a 4x4 matrix of i.i.d. standard complex Gaussians. Pure function of seed.
TwoQubitState random_state(std::uint64_t seed);

// Random valid X-state parameters: Dirichlet(1,1,1,1) diagonal, coherence
// magnitudes uniform up to the positivity bound, uniform phases.
XStateParams random_x_params(std::uint64_t seed);

// The X-state parameters of rho if its off-X entries vanish to `tol`.
std::optional<XStateParams> x_params_of(const TwoQubitState& rho, double tol = 1e-12);

// Local unitaries bringing both Bloch vectors onto +z. The returned state has
// bloch_a = (0, 0, |a|) and bloch_b = (0, 0, |b|); spectra, purity, discord and
// concurrence are unchanged. A vanishing Bloch vector is left alone.
TwoQubitState standard_form(const TwoQubitState& rho);

}  // namespace twirlkey
