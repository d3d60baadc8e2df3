#include "twirlkey/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twirlkey/error.hpp"
#include "twirlkey/protocol.hpp"
#include "twirlkey/sphere_search.hpp"
#include "twirlkey/twirl.hpp"

namespace twirlkey {
namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kBranchTol = 1e-12;
constexpr double kDirectionTol = 1e-4;
constexpr double kZOptimalTol = 1e-10;
constexpr double kRowBalanceTol = 1e-9;

Matrix4 dephase_a(const Matrix4& rho, const Vector3& n) {
  Matrix2 ns = Matrix2::Zero();
  for (int i = 1; i <= 3; ++i) ns += n(i - 1) * pauli(i);
  const Matrix2 id = Matrix2::Identity();
  const Matrix4 plus = tensor(0.5 * (id + ns), id);
  const Matrix4 minus = tensor(0.5 * (id - ns), id);
  return plus * rho * plus + minus * rho * minus;
}

double distance_sq(const Matrix4& rho, const Vector3& n) {
  return hs_norm_sq(rho - dephase_a(rho, n));
}

}  // namespace

ProjectorDirection::ProjectorDirection(const Vector3& n) : n_(n) {
  const double norm = n.norm();
  if (!(std::abs(norm - 1.0) <= kUnitTol)) {
    throw Error(ErrorCode::kNotUnitVector, "|n| = " + std::to_string(norm));
  }
}

ProjectorDirection ProjectorDirection::along(const Vector3& v) {
  const double norm = v.norm();
  if (!(norm > 1e-12) || !std::isfinite(norm)) {
    throw Error(ErrorCode::kNotUnitVector, "cannot normalize a zero direction");
  }
  return ProjectorDirection(v / norm);
}

std::string_view to_string(DiscordMethod method) {
  switch (method) {
    case DiscordMethod::kGridOracle: return "grid-oracle";
    case DiscordMethod::kXClosedForm: return "x-closed-form";
    case DiscordMethod::kEigenClosedForm: return "eigen-closed-form";
  }
  return "?";
}

TwoQubitState cq_state(const TwoQubitState& rho, const ProjectorDirection& d) {
  return validate_density(dephase_a(rho.rho(), d.direction()));
}

double cq_distance_sq(const TwoQubitState& rho, const ProjectorDirection& d) {
  return distance_sq(rho.rho(), d.direction());
}

DiscordResult discord_grid_oracle(const TwoQubitState& rho, int coarse_steps) {
  if (coarse_steps < kMinCoarseSteps) {
    throw Error(ErrorCode::kOutOfRange,
                "coarse_steps = " + std::to_string(coarse_steps) + " < " +
                    std::to_string(kMinCoarseSteps));
  }
  const Matrix4& m = rho.rho();
  const SphereMinimum best =
      minimize_on_hemisphere([&m](const Vector3& n) { return distance_sq(m, n); }, coarse_steps);
  return DiscordResult{std::max(0.0, best.value), ProjectorDirection::along(best.direction),
                       DiscordMethod::kGridOracle};
}

DiscordResult discord_eigen_closed_form(const TwoQubitState& rho) {
  const Vector3& a = rho.bloch_a();
  const Matrix3& c = rho.correlations();
  const Matrix3 k = a * a.transpose() + c * c.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix3> solver(k);
  const double top = solver.eigenvalues()(2);
  Vector3 dir = solver.eigenvectors().col(2);
  if (dir(2) < 0.0 || (dir(2) == 0.0 && (dir(1) < 0.0 || (dir(1) == 0.0 && dir(0) < 0.0)))) {
    dir = -dir;
  }
  const double value = 0.25 * (a.squaredNorm() + c.squaredNorm() - top);
  return DiscordResult{std::max(0.0, value), ProjectorDirection::along(dir),
                       DiscordMethod::kEigenClosedForm};
}

KPair k_values(const XStateParams& p) {
  const double sum = p.rho14 + p.rho23;
  const double d13 = p.rho11 - p.rho33;
  const double d24 = p.rho22 - p.rho44;
  return KPair{4.0 * sum * sum, 2.0 * (d13 * d13 + d24 * d24)};
}

DiscordResult discord_x_closed_form(const XStateParams& p) {
  const KPair k = k_values(p);
  if (k.k1 > k.k3 + kBranchTol) {
    throw Error(ErrorCode::kBranchConditionViolated,
                "k1 = " + std::to_string(k.k1) + " > k3 = " + std::to_string(k.k3));
  }
  return DiscordResult{2.0 * (p.rho14 * p.rho14 + p.rho23 * p.rho23), ProjectorDirection::z(),
                       DiscordMethod::kXClosedForm};
}

BoundCheck discord_bound(const TwoQubitState& rho, DiscordMethod method) {
  double lhs = 0.0;
  switch (method) {
    case DiscordMethod::kGridOracle: lhs = discord_grid_oracle(rho).value; break;
    case DiscordMethod::kEigenClosedForm: lhs = discord_eigen_closed_form(rho).value; break;
    case DiscordMethod::kXClosedForm: {
      const auto params = x_params_of(rho);
      if (!params) {
        throw Error(ErrorCode::kInvalidXParams, "state is not of X form");
      }
      lhs = discord_x_closed_form(*params).value;
      break;
    }
  }
  const MinErrorRate opt = min_error_rate(standard_form(rho));
  const double rx = 0.5 - opt.delta_x;
  const double ry = 0.5 - opt.delta_y;
  return BoundCheck{lhs, rx * rx + ry * ry};
}

double delta_min_from_discord(const TwoQubitState& rho) {
  const DiscordResult d = discord_grid_oracle(rho);
  const Vector3 z(0.0, 0.0, 1.0);
  const bool parallel = (d.argmin.direction() - z).norm() <= kDirectionTol;
  const bool z_optimal = cq_distance_sq(rho, ProjectorDirection::z()) - d.value <= kZOptimalTol;
  if (!parallel && !z_optimal) {
    throw Error(ErrorCode::kConditionsNotMet,
                "(I): the z projector is not the closest classical-quantum state");
  }
  const Matrix3& c = rho.correlations();
  const double row_x = c.row(0).norm();
  const double row_y = c.row(1).norm();
  if (std::abs(row_x - row_y) > kRowBalanceTol) {
    throw Error(ErrorCode::kConditionsNotMet, "(II): optimal x and y correlations differ, " +
                                                  std::to_string(row_x) + " vs " +
                                                  std::to_string(row_y));
  }
  return 0.5 * (1.0 - std::sqrt(2.0 * d.value));
}

double concurrence(const TwoQubitState& rho) {
  // With rho = sum_i v_i v_i^dagger, the l_i are the singular values of
  // tau_ij = v_i^dagger (s_y x s_y) conj(v_j). Working with tau keeps rank
  // deficient inputs accurate where square roots of the spin-flip spectrum
  // would amplify rounding.
  Eigen::SelfAdjointEigenSolver<Matrix4> eig(rho.rho());
  Matrix4 v = eig.eigenvectors();
  for (int i = 0; i < 4; ++i) v.col(i) *= std::sqrt(std::max(0.0, eig.eigenvalues()(i)));
  const Matrix4 flip = tensor(pauli(Pauli::kY), pauli(Pauli::kY));
  const Matrix4 tau = v.adjoint() * flip * v.conjugate();
  Eigen::JacobiSVD<Matrix4> svd(tau);
  const Vector4 s = svd.singularValues();  // descending
  return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

double binary_entropy(double x) {
  auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  return term(x) + term(1.0 - x);
}

double entanglement_of_formation(const TwoQubitState& rho) {
  const double c = std::clamp(concurrence(rho), 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

TwirlComparison twirl_discord_comparison(const TwoQubitState& rho, int coarse_steps) {
  const TwoQubitState twirled = twirl_analytic(rho);
  return TwirlComparison{discord_grid_oracle(rho, coarse_steps).value,
                         discord_grid_oracle(twirled, coarse_steps).value, concurrence(rho),
                         concurrence(twirled)};
}

}  // namespace twirlkey
