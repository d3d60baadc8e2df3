#pragma once

#include <complex>

#include <Eigen/Dense>

namespace twirlkey {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using Matrix3 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;
using Vector4 = Eigen::Vector4d;

// Validation tolerances shared by every module.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdFloor = -1e-10;
inline constexpr double kEigenHermitianTol = 1e-10;

enum class Pauli { kI = 0, kX = 1, kY = 2, kZ = 3 };

Matrix2 pauli(Pauli p);

// 1-based spatial index: 1 -> sigma_x, 2 -> sigma_y, 3 -> sigma_z.
Matrix2 pauli(int index);

// Kronecker product. Basis order is |uu>, |ud>, |du>, |dd>, where u is the
// +1 eigenvector of sigma_z and the first factor acts on qubit A.
Matrix4 tensor(const Matrix2& a, const Matrix2& b);

// Coefficients of rho = 1/4 (I + sum_i a_i s_i x I + sum_j b_j I x s_j
//                              + sum_ij C_ij s_i x s_j).
struct PauliDecomposition {
  Vector3 bloch_a = Vector3::Zero();
  Vector3 bloch_b = Vector3::Zero();
  Matrix3 correlations = Matrix3::Zero();
};

PauliDecomposition pauli_decompose(const Matrix4& rho);
Matrix4 pauli_compose(const PauliDecomposition& d);

// Tr(A A^dagger).
double hs_norm_sq(const Matrix4& a);

// Largest entrywise |A - A^dagger|.
double hermitian_deviation(const Matrix4& a);

// Real eigenvalues in descending order. Throws kNonHermitian if the input
// deviates from Hermitian by more than kEigenHermitianTol.
Vector4 hermitian_eigenvalues(const Matrix4& a);

// A validated two-qubit density matrix together with its Pauli coefficients.
// Instances only come out of validate_density, so holding one is proof that
// the matrix is Hermitian, unit-trace and positive semidefinite.
class TwoQubitState {
 public:
  const Matrix4& rho() const noexcept { return rho_; }
  const PauliDecomposition& pauli() const noexcept { return decomp_; }
  const Vector3& bloch_a() const noexcept { return decomp_.bloch_a; }
  const Vector3& bloch_b() const noexcept { return decomp_.bloch_b; }
  const Matrix3& correlations() const noexcept { return decomp_.correlations; }

  double purity() const { return hs_norm_sq(rho_); }

 private:
  friend TwoQubitState validate_density(const Matrix4& rho);
  TwoQubitState(Matrix4 rho, PauliDecomposition decomp);

  Matrix4 rho_;
  PauliDecomposition decomp_;
};

// Throws Error with kNonHermitian, kTraceNotOne or kNotPositive; the message
// names the measured violation.
TwoQubitState validate_density(const Matrix4& rho);

// (ua x ub) rho (ua x ub)^dagger
Matrix4 local_unitary(const Matrix4& rho, const Matrix2& ua, const Matrix2& ub);

// exp(-i angle/2 axis.sigma); rotates Bloch vectors by `angle` about `axis`.
Matrix2 su2_rotation(const Vector3& axis, double angle);

// Pure-state projector |psi><psi| for a (not necessarily normalized) vector.
Matrix4 projector(const Eigen::Vector4cd& psi);

}  // namespace twirlkey
