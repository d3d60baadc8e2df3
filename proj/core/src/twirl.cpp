#include "twirlkey/twirl.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "twirlkey/parallel.hpp"
#include "twirlkey/error.hpp"
#include "twirlkey/states.hpp"

namespace twirlkey {
namespace {

constexpr double kUnitaryTol = 1e-12;

Matrix4 conjugate_pair(const Matrix4& rho, const Matrix2& u) {
  const Matrix4 w = tensor(u, u.conjugate());
  return w * rho * w.adjoint();
}

}  // namespace

HaarSample::HaarSample(const Matrix2& u) : u_(u) {
  const double unitarity = (u * u.adjoint() - Matrix2::Identity()).cwiseAbs().maxCoeff();
  const double det_err = std::abs(u.determinant() - Complex(1.0, 0.0));
  if (!(unitarity <= kUnitaryTol) || !(det_err <= kUnitaryTol)) {
    throw Error(ErrorCode::kOutOfRange, "not in SU(2): |UU^dagger - I| = " +
                                            std::to_string(unitarity) +
                                            ", |det U - 1| = " + std::to_string(det_err));
  }
}

HaarSample haar_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  double q[4];
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (double& v : q) {
      v = normal(rng);
      norm_sq += v * v;
    }
  } while (norm_sq < 1e-300);
  const double inv = 1.0 / std::sqrt(norm_sq);
  const double a = q[0] * inv, b = q[1] * inv, c = q[2] * inv, d = q[3] * inv;
  Matrix2 u;
  u << Complex(a, b), Complex(c, d), Complex(-c, d), Complex(a, -b);
  return HaarSample(u);
}

TwoQubitState conjugate_pair_apply(const TwoQubitState& rho, const HaarSample& u) {
  return validate_density(conjugate_pair(rho.rho(), u.matrix()));
}

TwoQubitState twirl_analytic(const TwoQubitState& rho) { return werner(fidelity_phi_plus(rho)); }

double trace_distance(const TwoQubitState& a, const TwoQubitState& b) {
  return 0.5 * hermitian_eigenvalues(a.rho() - b.rho()).cwiseAbs().sum();
}

TwirlReport twirl_monte_carlo(const TwoQubitState& rho, std::size_t n, std::uint64_t seed,
                              unsigned workers) {
  if (n == 0) throw Error(ErrorCode::kOutOfRange, "twirl_monte_carlo needs n >= 1");
  const std::size_t chunks = (n + kTwirlChunkSize - 1) / kTwirlChunkSize;
  std::vector<Matrix4> partial(chunks, Matrix4::Zero());

  detail::parallel_for(chunks, workers, [&](std::size_t k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    std::mt19937_64 rng(seq);
    const std::size_t begin = k * kTwirlChunkSize;
    const std::size_t end = std::min(n, begin + kTwirlChunkSize);
    Matrix4 acc = Matrix4::Zero();
    for (std::size_t i = begin; i < end; ++i) acc += conjugate_pair(rho.rho(), haar_su2(rng).matrix());
    partial[k] = acc;
  });

  Matrix4 mean = Matrix4::Zero();
  for (const Matrix4& p : partial) mean += p;
  mean /= static_cast<double>(n);
  mean = 0.5 * (mean + mean.adjoint()).eval();
  const double tr = mean.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) mean /= tr;

  TwoQubitState result = validate_density(mean);
  const double dist = trace_distance(result, twirl_analytic(rho));
  return TwirlReport{std::move(result), n, dist};
}

}  // namespace twirlkey
