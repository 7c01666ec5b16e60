#pragma once

// Quartic double-well potential W(phi) = -phi^2/2 + phi^4/4, its reaction
// term, the surface-tension constant m and the stationary kink profile.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

#include "pfstefan/core.hpp"

namespace pfstefan::potential {

constexpr double w(double phi) noexcept {
  const double p2 = phi * phi;
  return -0.5 * p2 + 0.25 * p2 * p2;
}

/// phi - phi^3, i.e. -W'(phi). The wells phi = +-1 are stable fixed points.
constexpr double reaction(double phi) noexcept { return phi - phi * phi * phi; }

/// d(reaction)/dphi.
constexpr double reaction_slope(double phi) noexcept { return 1.0 - 3.0 * phi * phi; }

/// Stable root of phi - phi^3 + tilt = 0 on the branch of sign(branch):
/// the bulk phase value under a constant coupling term tilt = lambda u.
/// Newton from +-1; the branch exists while branch * tilt > -2/(3 sqrt 3).
inline double bulk_equilibrium(double tilt, int branch) {
  if (branch != 1 && branch != -1) throw ParameterError("bulk_equilibrium: branch must be +-1");
  if (!(branch * tilt > -2.0 / (3.0 * std::sqrt(3.0))))
    throw ParameterError("bulk_equilibrium: tilt too large, well has vanished");
  double phi = branch;
  for (int it = 0; it < 100; ++it) {
    const double step = (reaction(phi) + tilt) / reaction_slope(phi);
    phi -= step;
    if (std::abs(step) < 1e-16) break;
  }
  return phi;
}

/// sqrt(2 (W(phi) + 1/4)) = (1 - phi^2)/sqrt(2). W is shifted by its well
/// depth so the integrand of m is real on [-1, 1].
inline double shifted_sqrt(double phi) {
  if (!(std::abs(phi) <= 1.0))
    throw std::domain_error("shifted_sqrt: |phi| must not exceed 1");
  return (1.0 - phi * phi) / std::numbers::sqrt2;
}

/// Composite midpoint rule for shifted_sqrt over [a, b] with n cells.
inline double integrate_shifted_sqrt(double a, double b, std::size_t n) {
  const double dx = (b - a) / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    sum += shifted_sqrt(a + (static_cast<double>(k) + 0.5) * dx);
  return sum * dx;
}

/// m = integral over [-1, 1] of shifted_sqrt; analytic value 2 sqrt(2)/3.
/// One Richardson step on the midpoint rule, (4 M(2n) - M(n)) / 3: the plain
/// rule only reaches O(1/n^2), about 5e-7 at n = 1000.
inline double surface_constant_m(std::size_t n_quad) {
  if (n_quad < 8) throw ParameterError("surface_constant_m needs n_quad >= 8");
  const double coarse = integrate_shifted_sqrt(-1.0, 1.0, n_quad);
  const double fine = integrate_shifted_sqrt(-1.0, 1.0, 2 * n_quad);
  return (4.0 * fine - coarse) / 3.0;
}

inline constexpr double surface_constant_exact = 2.0 * std::numbers::sqrt2 / 3.0;

/// tanh(x / (eps sqrt 2)): solves eps^2 phi'' + phi - phi^3 = 0, phi(0) = 0,
/// phi(+-inf) = +-1.
inline double kink(double x, double eps) {
  if (!(eps > 0.0)) throw ParameterError("kink: eps must be positive");
  return std::tanh(x / (eps * std::numbers::sqrt2));
}

/// Second derivative of kink.
inline double kink_second_derivative(double x, double eps) {
  const double s = eps * std::numbers::sqrt2;
  const double t = std::tanh(x / s);
  return -2.0 * t * (1.0 - t * t) / (s * s);
}

}  // namespace pfstefan::potential
