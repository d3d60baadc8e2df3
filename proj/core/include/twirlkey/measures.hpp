#pragma once

#include <string_view>

#include "twirlkey/qubit_algebra.hpp"
#include "twirlkey/states.hpp"

namespace twirlkey {

// Direction n of the projector pair (I +/- n.sigma)/2 that Alice measures.
class ProjectorDirection {
 public:
  // Throws kNotUnitVector unless | |n| - 1 | <= 1e-12.
  explicit ProjectorDirection(const Vector3& n);
  static ProjectorDirection along(const Vector3& v);
  static ProjectorDirection z() { return ProjectorDirection(Vector3(0.0, 0.0, 1.0)); }

  const Vector3& direction() const noexcept { return n_; }

 private:
  Vector3 n_;
};

enum class DiscordMethod { kGridOracle, kXClosedForm, kEigenClosedForm };

std::string_view to_string(DiscordMethod method);

struct DiscordResult {
  double value = 0.0;
  ProjectorDirection argmin;
  DiscordMethod method;
};

struct KPair {
  double k1 = 0.0;
  double k3 = 0.0;
};

inline constexpr int kDefaultCoarseSteps = 32;
inline constexpr int kMinCoarseSteps = 16;

// sum_+/- (P_+/- x I) rho (P_+/- x I): the state left after Alice measures
// along d and forgets the result.
TwoQubitState cq_state(const TwoQubitState& rho, const ProjectorDirection& d);

// ||rho - cq_state(rho, d)||^2 computed on the matrices.
double cq_distance_sq(const TwoQubitState& rho, const ProjectorDirection& d);

// Geometric discord straight from its definition: min_d ||rho - chi_d||^2,
// searched over d on a coarse hemisphere grid plus local refinement.
// Throws kOutOfRange if coarse_steps < kMinCoarseSteps.
DiscordResult discord_grid_oracle(const TwoQubitState& rho,
                                  int coarse_steps = kDefaultCoarseSteps);

// D = (|a|^2 + ||C||_F^2 - lambda_max(a a^T + C C^T)) / 4, a and C the Bloch
// vector of A and the correlation matrix. Argmin is the top eigenvector.
DiscordResult discord_eigen_closed_form(const TwoQubitState& rho);

// k1 = 4 (rho14 + rho23)^2 is the largest eigenvalue of the transverse block of
// C C^T; k3 = 2[(rho11 - rho33)^2 + (rho22 - rho44)^2] is its zz entry plus a_z^2.
KPair k_values(const XStateParams& p);

// 2 (rho14^2 + rho23^2), valid when the z measurement is optimal (k1 <= k3).
// Throws kBranchConditionViolated otherwise.
DiscordResult discord_x_closed_form(const XStateParams& p);

struct BoundCheck {
  double lhs = 0.0;  // geometric discord
  double rhs = 0.0;  // (1/2 - delta_x_min)^2 + (1/2 - delta_y_min)^2
};

// Discord against the squared optimal correlations of the x and y rows. The
// rows are evaluated in the standard frame (Alice's Bloch vector along +z),
// which is the frame where Alice's x / y outcomes are unbiased.
BoundCheck discord_bound(const TwoQubitState& rho,
                        DiscordMethod method = DiscordMethod::kGridOracle);

// (1 - sqrt(2 D)) / 2. Requires that the z measurement is an optimal
// projector (I) and that the x and y rows of C have equal norm to 1e-9 (II);
// throws kConditionsNotMet naming the failed condition.
double delta_min_from_discord(const TwoQubitState& rho);

// Wootters concurrence max(0, l1 - l2 - l3 - l4), l_i the decreasing square
// roots of the eigenvalues of rho (s_y x s_y) rho* (s_y x s_y).
double concurrence(const TwoQubitState& rho);

// -x log2 x - (1 - x) log2 (1 - x), with 0 log 0 = 0.
double binary_entropy(double x);

double entanglement_of_formation(const TwoQubitState& rho);

struct TwirlComparison {
  double d_before = 0.0;
  double d_after = 0.0;
  double c_before = 0.0;
  double c_after = 0.0;
};

// Grid-oracle discord and concurrence before and after the exact twirl.
TwirlComparison twirl_discord_comparison(const TwoQubitState& rho,
                                         int coarse_steps = kDefaultCoarseSteps);

}  // namespace twirlkey
