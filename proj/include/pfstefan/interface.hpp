#pragma once

// Sharp-interface observables extracted from discrete fields: zero-crossing
// position, front velocity, curvature, temperature-gradient jump and power-law
// fits of front trajectories.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pfstefan/core.hpp"

namespace pfstefan {

/// No unique interface could be located in the data.
class InterfaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RadiusSeries {
  std::vector<double> times;
  std::vector<double> radii;
  ModelParams params;
};

namespace interface {

/// Solid is the phi > 0 phase everywhere in this library.
enum class Side { left, right };

inline std::size_t count_sign_changes(std::span<const double> phi) {
  std::size_t count = 0;
  for (std::size_t i = 0; i + 1 < phi.size(); ++i)
    if ((phi[i] > 0.0) != (phi[i + 1] > 0.0)) ++count;
  return count;
}

/// Zero crossing of phi by linear interpolation between the bracketing pair.
inline double locate_zero(std::span<const double> phi, const Grid1D& grid) {
  if (phi.size() != grid.size()) throw ParameterError("locate_zero: size mismatch");
  std::size_t found = 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
    if ((phi[i] > 0.0) != (phi[i + 1] > 0.0)) {
      if (found++ == 0) at = i;
    }
  }
  if (found == 0) throw InterfaceError("locate_zero: no sign change");
  if (found > 1)
    throw InterfaceError("locate_zero: " + std::to_string(found) + " sign changes");
  return grid.x(at) + grid.spacing() * phi[at] / (phi[at] - phi[at + 1]);
}

/// Distance between the phi = +level and phi = -level crossings nearest the
/// interface; used as the interface width.
inline double interface_width(std::span<const double> phi, const Grid1D& grid,
                              double level = 0.9) {
  auto crossing = [&](double target) -> double {
    std::optional<double> pos;
    for (std::size_t i = 0; i + 1 < phi.size(); ++i) {
      const double a = phi[i] - target;
      const double b = phi[i + 1] - target;
      if ((a > 0.0) != (b > 0.0)) {
        if (pos) throw InterfaceError("interface_width: level crossed more than once");
        pos = grid.x(i) + grid.spacing() * a / (a - b);
      }
    }
    if (!pos) throw InterfaceError("interface_width: level never crossed");
    return *pos;
  };
  return std::abs(crossing(level) - crossing(-level));
}

/// Linear interpolation of f at x.
inline double interpolate(std::span<const double> f, const Grid1D& grid, double x) {
  const double s = (x - grid.origin()) / grid.spacing();
  if (s < 0.0 || s > static_cast<double>(grid.size() - 1))
    throw ParameterError("interpolate: point outside grid");
  auto i = static_cast<std::size_t>(std::floor(s));
  if (i >= grid.size() - 1) i = grid.size() - 2;
  const double w = s - static_cast<double>(i);
  return (1.0 - w) * f[i] + w * f[i + 1];
}

/// d(position)/dt: centered differences inside, one-sided at the ends.
inline std::vector<double> front_velocity(std::span<const double> positions,
                                          std::span<const double> times) {
  if (positions.size() != times.size())
    throw ParameterError("front_velocity: size mismatch");
  const std::size_t n = positions.size();
  if (n < 2) throw ParameterError("front_velocity: need at least 2 samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(times[i] > times[i - 1]))
      throw ParameterError("front_velocity: times must be strictly increasing");
  std::vector<double> v(n);
  v[0] = (positions[1] - positions[0]) / (times[1] - times[0]);
  v[n - 1] = (positions[n - 1] - positions[n - 2]) / (times[n - 1] - times[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i)
    v[i] = (positions[i + 1] - positions[i - 1]) / (times[i + 1] - times[i - 1]);
  return v;
}

/// (d - 1)/R.
inline double curvature_of_radius(double radius, int dim) {
  if (!(radius > 0.0)) throw ParameterError("curvature_of_radius: radius must be positive");
  if (dim < 1 || dim > 3) throw ParameterError("curvature_of_radius: dim out of range");
  return static_cast<double>(dim - 1) / radius;
}

inline bool flux_jump_feasible(const Grid1D& grid, double x_star, std::size_t stencil_offset) {
  const double s = (x_star - grid.origin()) / grid.spacing();
  const double need = static_cast<double>(stencil_offset + 2);
  return s - need >= 0.0 && s + need <= static_cast<double>(grid.size() - 1);
}

/**
 * Jump of du/dx across x_star, solid side minus liquid side.
 *
 * Each side's derivative is taken stencil_offset*h away from x_star, using
 * second-order one-sided node derivatives whose stencils point away from the
 * interface, linearly interpolated to the evaluation point.
 */
inline double flux_jump(std::span<const double> u, const Grid1D& grid, double x_star,
                        std::size_t stencil_offset, Side solid) {
  if (u.size() != grid.size()) throw ParameterError("flux_jump: size mismatch");
  if (stencil_offset < 1 || !flux_jump_feasible(grid, x_star, stencil_offset))
    throw ParameterError("flux_jump: insufficient points around interface");
  const double h = grid.spacing();
  const double off = static_cast<double>(stencil_offset) * h;

  auto backward = [&](std::size_t i) { return (3.0 * u[i] - 4.0 * u[i - 1] + u[i - 2]) / (2.0 * h); };
  auto forward = [&](std::size_t i) { return (-3.0 * u[i] + 4.0 * u[i + 1] - u[i + 2]) / (2.0 * h); };

  auto left_derivative = [&] {
    const double x = x_star - off;
    const double s = (x - grid.origin()) / h;
    const auto i = static_cast<std::size_t>(std::floor(s));
    const double w = s - static_cast<double>(i);
    return (1.0 - w) * backward(i) + w * backward(i + 1);
  };
  auto right_derivative = [&] {
    const double x = x_star + off;
    const double s = (x - grid.origin()) / h;
    const auto i = static_cast<std::size_t>(std::ceil(s));
    const double w = static_cast<double>(i) - s;
    return (1.0 - w) * forward(i) + w * forward(i - 1);
  };

  const double dl = left_derivative();
  const double dr = right_derivative();
  return solid == Side::left ? dl - dr : dr - dl;
}

/// Solid side picked from the sign of phi at the grid ends.
inline double flux_jump(std::span<const double> u, std::span<const double> phi,
                        const Grid1D& grid, double x_star, std::size_t stencil_offset = 3) {
  if (phi.size() != grid.size()) throw ParameterError("flux_jump: size mismatch");
  const Side solid = phi.front() > phi.back() ? Side::left : Side::right;
  return flux_jump(u, grid, x_star, stencil_offset, solid);
}

/// Normal velocity from the temperature-gradient jump, jump / 2.
constexpr double stefan_velocity(double jump) noexcept { return 0.5 * jump; }

/// Heat-balance velocity for a general latent-heat coupling: the jump divided
/// by the latent heat released per unit advance, 2 * latent_heat. Equals
/// stefan_velocity at latent_heat = 1.
constexpr double stefan_velocity(double jump, double latent_heat) noexcept {
  return jump / (2.0 * latent_heat);
}

/// Inclusive time window for fits; unset bounds fall back to the last half of
/// the samples.
struct FitWindow {
  std::optional<double> t_min;
  std::optional<double> t_max;
};

struct PowerLawFit {
  double exponent{0.0};      ///< slope of log(value) vs log(t)
  double coefficient{0.0};   ///< value ~ coefficient * t^exponent
  double square_slope{0.0};  ///< slope of value^2 vs t
  double square_intercept{0.0};
  std::size_t samples{0};
};

namespace detail {

struct LineFit {
  double slope;
  double intercept;
};

inline LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ParameterError("least squares: degenerate abscissa");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

}  // namespace detail

/// Least-squares fits of log(value) vs log(t) and value^2 vs t over a window.
inline PowerLawFit fit_power_law(std::span<const double> times, std::span<const double> values,
                                 FitWindow window = {}) {
  if (times.size() != values.size()) throw ParameterError("fit_power_law: size mismatch");
  if (times.size() < 10) throw ParameterError("fit_power_law: need at least 10 samples");

  std::size_t begin = 0, end = times.size();
  if (!window.t_min && !window.t_max) {
    begin = times.size() / 2;
  } else {
    while (begin < end && window.t_min && times[begin] < *window.t_min) ++begin;
    while (end > begin && window.t_max && times[end - 1] > *window.t_max) --end;
  }
  if (end - begin < 2) throw ParameterError("fit_power_law: fewer than 2 samples in window");

  std::vector<double> lt, lv, t, v2;
  for (std::size_t i = begin; i < end; ++i) {
    if (!(values[i] > 0.0))
      throw ParameterError("fit_power_law: non-positive value in window at t=" +
                           std::to_string(times[i]));
    t.push_back(times[i]);
    v2.push_back(values[i] * values[i]);
    if (times[i] > 0.0) {
      lt.push_back(std::log(times[i]));
      lv.push_back(std::log(values[i]));
    }
  }
  PowerLawFit fit;
  fit.samples = end - begin;
  const auto sq = detail::least_squares(t, v2);
  fit.square_slope = sq.slope;
  fit.square_intercept = sq.intercept;
  if (lt.size() >= 2) {
    const auto lg = detail::least_squares(lt, lv);
    fit.exponent = lg.slope;
    fit.coefficient = std::exp(lg.intercept);
  }
  return fit;
}

inline PowerLawFit fit_power_law(const RadiusSeries& series, FitWindow window = {}) {
  return fit_power_law(series.times, series.radii, window);
}

}  // namespace interface
}  // namespace pfstefan
