#pragma once

// Closed-form sharp-interface (Stefan) results used as ground truth.
// Sign conventions the source leaves open are exposed as parameters.

#include <cmath>
#include <stdexcept>

#include "pfstefan/core.hpp"

namespace pfstefan::sharp {

/// Interface radius vanished before the requested time.
class ExtinctionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SharpSolution {
  double velocity;
  double delta;
  double beta;
};

/// Planar steady velocity V = (delta - 1)/beta.
inline double sharp_velocity(double delta, double beta) {
  if (!(beta > 0.0)) throw ParameterError("sharp_velocity: beta must be positive");
  return (delta - 1.0) / beta;
}

inline SharpSolution sharp_solution(double delta, double beta) {
  return {sharp_velocity(delta, beta), delta, beta};
}

/// Steady temperature profile: exp(-V x) - delta in the liquid (x >= 0),
/// 1 - delta in the solid.
inline double sharp_u(double x, double velocity, double delta) {
  return x >= 0.0 ? std::exp(-velocity * x) - delta : 1.0 - delta;
}

/// Gibbs-Thomson interface temperature -(m / 2l)(kappa - alpha v).
inline double gibbs_thomson_u(double kappa, double v, const ModelParams& p, double m) {
  if (!(m > 0.0)) throw ParameterError("gibbs_thomson_u: m must be positive");
  validate_params(p);
  return -(m / (2.0 * p.latent_heat)) * (kappa - p.alpha * v);
}

/// Tension-free velocity sign * (2l / (alpha m)) u.
inline double kinetic_velocity(double u, const ModelParams& p, double m, int sign) {
  if (!(m > 0.0)) throw ParameterError("kinetic_velocity: m must be positive");
  if (sign != 1 && sign != -1) throw ParameterError("kinetic_velocity: sign must be +1 or -1");
  return sign * (2.0 * p.latent_heat / (p.alpha * m)) * u;
}

/// Curvature-driven velocity sign * kappa / alpha at zero interface temperature.
inline double curvature_flow_velocity(double kappa, double alpha, int sign) {
  if (!(alpha > 0.0)) throw ParameterError("curvature_flow_velocity: alpha must be positive");
  if (sign != 1 && sign != -1)
    throw ParameterError("curvature_flow_velocity: sign must be +1 or -1");
  return sign * kappa / alpha;
}

/// R(t) = sqrt(R0^2 + sign * 2 eps^2 (d - 1) t).
inline double mullins_radius(double r0, double eps, int dim, double t, int sign) {
  if (sign != 1 && sign != -1) throw ParameterError("mullins_radius: sign must be +1 or -1");
  const double radicand = r0 * r0 + sign * 2.0 * eps * eps * (dim - 1) * t;
  if (radicand < 0.0) throw ExtinctionError("mullins_radius: interface extinct before t");
  return std::sqrt(radicand);
}

/// Magnitude of d(R^2)/dt under curvature flow, 2 eps^2 (d - 1).
constexpr double mullins_square_rate(double eps, int dim) noexcept {
  return 2.0 * eps * eps * (dim - 1);
}

}  // namespace pfstefan::sharp
