#include "twirlkey/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "twirlkey/error.hpp"

namespace twirlkey {
namespace {

constexpr double kParamTol = 1e-12;

void require_range(double v, double lo, double hi, const char* name) {
  if (!(v >= lo && v <= hi)) {
    throw Error(ErrorCode::kOutOfRange, std::string(name) + " = " + std::to_string(v) +
                                            " outside [" + std::to_string(lo) + ", " +
                                            std::to_string(hi) + "]");
  }
}

Eigen::Vector4cd bell_vector(BellKind kind) {
  const double s = 1.0 / std::numbers::sqrt2;
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (kind) {
    case BellKind::kPhiPlus: v(0) = s; v(3) = s; break;
    case BellKind::kPhiMinus: v(0) = s; v(3) = -s; break;
    case BellKind::kPsiPlus: v(1) = s; v(2) = s; break;
    case BellKind::kPsiMinus: v(1) = s; v(2) = -s; break;
  }
  return v;
}

// SU(2) element rotating the direction of v onto +z.
Matrix2 align_to_z(const Vector3& v) {
  const double norm = v.norm();
  if (norm < 1e-15) return Matrix2::Identity();
  const Vector3 u = v / norm;
  const Vector3 z(0.0, 0.0, 1.0);
  const Vector3 axis = u.cross(z);
  const double s = axis.norm();
  const double c = u.dot(z);
  if (s < 1e-15) {
    return c > 0 ? Matrix2(Matrix2::Identity()) : su2_rotation(Vector3(1.0, 0.0, 0.0), std::numbers::pi);
  }
  return su2_rotation(axis, std::atan2(s, c));
}

}  // namespace

WernerFidelity::WernerFidelity(double f) : f_(f) { require_range(f, 0.0, 1.0, "F"); }

std::string_view to_string(BellKind kind) {
  switch (kind) {
    case BellKind::kPhiPlus: return "phi+";
    case BellKind::kPhiMinus: return "phi-";
    case BellKind::kPsiPlus: return "psi+";
    case BellKind::kPsiMinus: return "psi-";
  }
  return "?";
}

TwoQubitState pure_state(double gamma) {
  require_range(gamma, 0.0, std::numbers::pi / 2.0, "gamma");
  const double angle = std::numbers::pi / 4.0 - gamma / 2.0;
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
  psi(0) = std::cos(angle);
  psi(3) = std::sin(angle);
  return validate_density(psi * psi.adjoint());
}

TwoQubitState werner(WernerFidelity f) {
  const double fid = f.value();
  const double rest = (1.0 - fid) / 3.0;
  Matrix4 rho = fid * projector(bell_vector(BellKind::kPhiPlus)) +
                rest * (projector(bell_vector(BellKind::kPhiMinus)) +
                        projector(bell_vector(BellKind::kPsiPlus)) +
                        projector(bell_vector(BellKind::kPsiMinus)));
  return validate_density(rho);
}

TwoQubitState bell(BellKind kind) { return validate_density(projector(bell_vector(kind))); }

TwoQubitState x_state(const XStateParams& p) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidXParams, what); };
  for (double d : {p.rho11, p.rho22, p.rho33, p.rho44}) {
    if (!(d >= 0.0)) fail("diagonal entry " + std::to_string(d) + " is negative");
  }
  const double sum = p.rho11 + p.rho22 + p.rho33 + p.rho44;
  if (std::abs(sum - 1.0) > kParamTol) fail("diagonal sums to " + std::to_string(sum));
  if (!(p.rho14 >= 0.0) || !(p.rho23 >= 0.0)) fail("coherence magnitudes must be nonnegative");
  if (p.rho14 > std::sqrt(p.rho11 * p.rho44) + kParamTol) {
    fail("rho14 exceeds sqrt(rho11 rho44)");
  }
  if (p.rho23 > std::sqrt(p.rho22 * p.rho33) + kParamTol) {
    fail("rho23 exceeds sqrt(rho22 rho33)");
  }
  Matrix4 rho = Matrix4::Zero();
  rho(0, 0) = p.rho11;
  rho(1, 1) = p.rho22;
  rho(2, 2) = p.rho33;
  rho(3, 3) = p.rho44;
  rho(0, 3) = std::polar(p.rho14, p.phase14);
  rho(3, 0) = std::conj(rho(0, 3));
  rho(1, 2) = std::polar(p.rho23, p.phase23);
  rho(2, 1) = std::conj(rho(1, 2));
  return validate_density(rho);
}

TwoQubitState maximally_mixed() { return validate_density(0.25 * Matrix4::Identity()); }

TwoQubitState depolarized_pure(double gamma, double p) {
  require_range(p, 0.0, 1.0, "p");
  const TwoQubitState omega = pure_state(gamma);
  return validate_density(p * omega.rho() + (1.0 - p) * 0.25 * Matrix4::Identity());
}

WernerFidelity fidelity_phi_plus(const TwoQubitState& rho) {
  const Eigen::Vector4cd phi = bell_vector(BellKind::kPhiPlus);
  const double f = (phi.adjoint() * rho.rho() * phi)(0, 0).real();
  return WernerFidelity(std::clamp(f, 0.0, 1.0));
}

TwoQubitState random_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix4 g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex(re, im);
    }
  const Matrix4 w = g * g.adjoint();
  return validate_density(w / w.trace().real());
}

XStateParams random_x_params(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double e[4];
  double total = 0.0;
  for (double& v : e) total += (v = expo(rng));
  XStateParams p;
  p.rho11 = e[0] / total;
  p.rho22 = e[1] / total;
  p.rho33 = e[2] / total;
  p.rho44 = 1.0 - p.rho11 - p.rho22 - p.rho33;
  if (p.rho44 < 0.0) p.rho44 = 0.0;
  p.rho14 = unit(rng) * std::sqrt(p.rho11 * p.rho44);
  p.rho23 = unit(rng) * std::sqrt(p.rho22 * p.rho33);
  p.phase14 = 2.0 * std::numbers::pi * unit(rng);
  p.phase23 = 2.0 * std::numbers::pi * unit(rng);
  return p;
}

std::optional<XStateParams> x_params_of(const TwoQubitState& rho, double tol) {
  const Matrix4& m = rho.rho();
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const bool on_x = (r == c) || (r + c == 3);
      if (!on_x && std::abs(m(r, c)) > tol) return std::nullopt;
    }
  XStateParams p;
  p.rho11 = m(0, 0).real();
  p.rho22 = m(1, 1).real();
  p.rho33 = m(2, 2).real();
  p.rho44 = m(3, 3).real();
  p.rho14 = std::abs(m(0, 3));
  p.rho23 = std::abs(m(1, 2));
  p.phase14 = std::arg(m(0, 3));
  p.phase23 = std::arg(m(1, 2));
  return p;
}

TwoQubitState standard_form(const TwoQubitState& rho) {
  const Matrix2 ua = align_to_z(rho.bloch_a());
  const Matrix2 ub = align_to_z(rho.bloch_b());
  return validate_density(local_unitary(rho.rho(), ua, ub));
}

}  // namespace twirlkey
