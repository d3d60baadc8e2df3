#include "twirlkey/qubit_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "twirlkey/error.hpp"

namespace twirlkey {
namespace {

constexpr Complex kI{0.0, 1.0};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

Matrix2 pauli(Pauli p) {
  Matrix2 m;
  switch (p) {
    case Pauli::kI: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::kX: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::kY: m << 0.0, -kI, kI, 0.0; break;
    case Pauli::kZ: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

Matrix2 pauli(int index) {
  if (index < 0 || index > 3) {
    throw Error(ErrorCode::kOutOfRange, "Pauli index " + std::to_string(index));
  }
  return pauli(static_cast<Pauli>(index));
}

Matrix4 tensor(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

double hermitian_deviation(const Matrix4& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

PauliDecomposition pauli_decompose(const Matrix4& rho) {
  const double dev = hermitian_deviation(rho);
  if (dev > kHermitianTol) {
    throw Error(ErrorCode::kNonHermitian, "max |rho - rho^dagger| = " + sci(dev));
  }
  // Tr[rho (A x B)] for Hermitian rho is real; the imaginary part is rounding.
  auto expect = [&](int i, int j) {
    return (rho * tensor(pauli(i), pauli(j))).trace().real();
  };
  PauliDecomposition d;
  for (int i = 1; i <= 3; ++i) {
    d.bloch_a(i - 1) = expect(i, 0);
    d.bloch_b(i - 1) = expect(0, i);
    for (int j = 1; j <= 3; ++j) d.correlations(i - 1, j - 1) = expect(i, j);
  }
  return d;
}

Matrix4 pauli_compose(const PauliDecomposition& d) {
  Matrix4 out = Matrix4::Identity();
  const Matrix2 id = pauli(Pauli::kI);
  for (int i = 1; i <= 3; ++i) {
    out += d.bloch_a(i - 1) * tensor(pauli(i), id);
    out += d.bloch_b(i - 1) * tensor(id, pauli(i));
    for (int j = 1; j <= 3; ++j) {
      out += d.correlations(i - 1, j - 1) * tensor(pauli(i), pauli(j));
    }
  }
  return 0.25 * out;
}

double hs_norm_sq(const Matrix4& a) { return (a * a.adjoint()).trace().real(); }

Vector4 hermitian_eigenvalues(const Matrix4& a) {
  const double dev = hermitian_deviation(a);
  if (dev > kEigenHermitianTol) {
    throw Error(ErrorCode::kNonHermitian, "max |A - A^dagger| = " + sci(dev));
  }
  Eigen::SelfAdjointEigenSolver<Matrix4> solver(a, Eigen::EigenvaluesOnly);
  Vector4 ascending = solver.eigenvalues();
  return ascending.reverse();
}

TwoQubitState::TwoQubitState(Matrix4 rho, PauliDecomposition decomp)
    : rho_(std::move(rho)), decomp_(std::move(decomp)) {}

TwoQubitState validate_density(const Matrix4& rho) {
  if (!rho.allFinite()) {
    throw Error(ErrorCode::kNonHermitian, "matrix has non-finite entries");
  }
  const double dev = hermitian_deviation(rho);
  if (dev > kHermitianTol) {
    throw Error(ErrorCode::kNonHermitian, "max |rho - rho^dagger| = " + sci(dev));
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw Error(ErrorCode::kTraceNotOne, "trace = " + sci(tr));
  }
  // Remove the sub-tolerance anti-Hermitian residue so downstream algebra sees
  // an exactly Hermitian matrix.
  Matrix4 herm = 0.5 * (rho + rho.adjoint());
  const double min_eig = hermitian_eigenvalues(herm)(3);
  if (min_eig < kPsdFloor) {
    throw Error(ErrorCode::kNotPositive, "min eigenvalue = " + sci(min_eig));
  }
  PauliDecomposition d = pauli_decompose(herm);
  return TwoQubitState(std::move(herm), std::move(d));
}

Matrix4 local_unitary(const Matrix4& rho, const Matrix2& ua, const Matrix2& ub) {
  const Matrix4 u = tensor(ua, ub);
  return u * rho * u.adjoint();
}

Matrix2 su2_rotation(const Vector3& axis, double angle) {
  const Vector3 n = axis.normalized();
  Matrix2 out = std::cos(angle / 2.0) * pauli(Pauli::kI);
  for (int i = 1; i <= 3; ++i) out -= kI * std::sin(angle / 2.0) * n(i - 1) * pauli(i);
  return out;
}

Matrix4 projector(const Eigen::Vector4cd& psi) {
  const Eigen::Vector4cd v = psi.normalized();
  return v * v.adjoint();
}

}  // namespace twirlkey
