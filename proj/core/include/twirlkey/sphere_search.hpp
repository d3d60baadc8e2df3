#pragma once

#include <functional>

#include "twirlkey/qubit_algebra.hpp"

namespace twirlkey {

struct SphereMinimum {
  Vector3 direction;  // unit vector, canonicalized to the z >= 0 hemisphere
  double value = 0.0;
};

// Minimizes an antipodally symmetric objective f(n) = f(-n) over unit
// vectors. A coarse (theta, phi) grid of coarse_steps^2 points on the upper
// hemisphere seeds a compass search in the tangent plane whose step halves
// every stage for up to 40 stages, stopping once the step is below
// direction_tol. If a finite-difference Hessian at the result shows negative
// curvature (a saddle), the search steps along it and refines again.
// Deterministic: grid ties keep the first point in (theta, phi) order.
SphereMinimum minimize_on_hemisphere(const std::function<double(const Vector3&)>& f,
                                     int coarse_steps, double direction_tol = 1e-7);

}  // namespace twirlkey
