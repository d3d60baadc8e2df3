#include "twirlkey/sphere_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <Eigen/Eigenvalues>

#include "twirlkey/error.hpp"

namespace twirlkey {
namespace {

constexpr int kStages = 40;
constexpr int kMovesPerStage = 64;
constexpr int kMaxEscapes = 4;
constexpr double kCurvatureProbe = 1e-3;
// Negative curvature shallower than this can lower the value by ~1e-8 at most.
constexpr double kCurvatureFloor = 1e-8;

Vector3 spherical(double theta, double phi) {
  return Vector3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                 std::cos(theta));
}

Vector3 canonical(Vector3 n) {
  for (int i : {2, 1, 0}) {
    if (n(i) > 0.0) return n;
    if (n(i) < 0.0) return -n;
  }
  return n;
}

}  // namespace

SphereMinimum minimize_on_hemisphere(const std::function<double(const Vector3&)>& f,
                                     int coarse_steps, double direction_tol) {
  if (coarse_steps < 2) throw Error(ErrorCode::kOutOfRange, "coarse_steps must be >= 2");

  const double dtheta = (std::numbers::pi / 2.0) / (coarse_steps - 1);
  const double dphi = 2.0 * std::numbers::pi / coarse_steps;
  Vector3 best = Vector3(0.0, 0.0, 1.0);
  double best_value = f(best);
  for (int i = 1; i < coarse_steps; ++i) {
    for (int j = 0; j < coarse_steps; ++j) {
      const Vector3 n = spherical(i * dtheta, j * dphi);
      const double v = f(n);
      if (v < best_value) {
        best_value = v;
        best = n;
      }
    }
  }

  auto frame = [](const Vector3& n) {
    const Vector3 helper = std::abs(n(2)) < 0.9 ? Vector3(0, 0, 1) : Vector3(1, 0, 0);
    const Vector3 e1 = n.cross(helper).normalized();
    return std::pair<Vector3, Vector3>(e1, n.cross(e1));
  };
  auto geodesic = [](const Vector3& n, const Vector3& u, double angle) {
    return Vector3(std::cos(angle) * n + std::sin(angle) * u).normalized();
  };

  // Compass search in the tangent plane, step halving per stage.
  auto refine = [&](double step) {
    for (int stage = 0; stage < kStages && step >= direction_tol; ++stage, step *= 0.5) {
      for (int move = 0; move < kMovesPerStage; ++move) {
        const auto [e1, e2] = frame(best);
        bool improved = false;
        Vector3 candidate_best = best;
        for (int dx = -1; dx <= 1; ++dx)
          for (int dy = -1; dy <= 1; ++dy) {
            if (dx == 0 && dy == 0) continue;
            const Vector3 n = (best + step * (dx * e1 + dy * e2)).normalized();
            const double v = f(n);
            if (v < best_value) {
              best_value = v;
              candidate_best = n;
              improved = true;
            }
          }
        best = candidate_best;
        if (!improved) break;
      }
    }
  };

  refine(std::max(dtheta, dphi));

  // The compass can stall on a saddle whose descent cone is narrower than its
  // direction spacing. Probe the tangent Hessian and leave along negative
  // curvature.
  for (int escape = 0; escape < kMaxEscapes; ++escape) {
    const auto [e1, e2] = frame(best);
    const double r = kCurvatureProbe;
    auto second = [&](const Vector3& u) {
      return (f(geodesic(best, u, r)) + f(geodesic(best, u, -r)) - 2.0 * best_value) / (r * r);
    };
    const double h11 = second(e1);
    const double h22 = second(e2);
    const double h12 = second((e1 + e2) / std::sqrt(2.0)) - 0.5 * (h11 + h22);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(
        (Eigen::Matrix2d() << h11, h12, h12, h22).finished());
    if (eig.eigenvalues()(0) >= -kCurvatureFloor) break;
    const Eigen::Vector2d w = eig.eigenvectors().col(0);
    const Vector3 u = (w(0) * e1 + w(1) * e2).normalized();
    bool moved = false;
    for (double angle = 0.5; angle >= direction_tol && !moved; angle *= 0.5) {
      for (double sign : {1.0, -1.0}) {
        const Vector3 n = geodesic(best, sign * u, angle);
        const double v = f(n);
        if (v < best_value) {
          best = n;
          best_value = v;
          moved = true;
          refine(angle);
          break;
        }
      }
    }
    if (!moved) break;
  }
  return SphereMinimum{canonical(best), best_value};
}

}  // namespace twirlkey
