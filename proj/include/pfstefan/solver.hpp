#pragma once

// Explicit finite-difference integration of
//   phi_t = eps^2 phi_xx + phi - phi^3 + lambda u,
//   u_t   = u_xx + l phi_t                       (coupled, Cartesian)
//   phi_t = eps^2 (phi_rr + (d-1)/r phi_r) + phi - phi^3   (radial)
// and pseudo-time relaxation of the moving-frame steady state.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "pfstefan/core.hpp"
#include "pfstefan/interface.hpp"
#include "pfstefan/potential.hpp"

namespace pfstefan {

/// no_flux: ghost value equals the boundary value (zero flux through the
/// outer half-cell face, so grid sums of the Laplacian vanish exactly).
/// dirichlet: the end values are boundary data and are never updated.
enum class Boundary { no_flux, dirichlet };

struct StepControl {
  double dt{0.0};
  double t_end{0.0};
  std::size_t snapshot_every{100};
  std::size_t max_steps{100'000'000};
};

/// Largest admissible explicit step. Diffusive part h^2 / (2 D k) with
/// D the largest diffusivity and k = 2 (Cartesian) or 2d (radial); the
/// reaction part caps dt at max_reaction_dt.
inline constexpr double max_reaction_dt = 0.5;

inline double coupled_stability_limit(double h, const ModelParams& p) {
  const double diff = std::max(1.0, p.epsilon * p.epsilon);
  return std::min(h * h / (2.0 * diff * 2.0), max_reaction_dt);
}

inline double radial_stability_limit(double h, const ModelParams& p) {
  const double diff = p.epsilon * p.epsilon;
  return std::min(h * h / (2.0 * diff * 2.0 * p.dim), max_reaction_dt);
}

inline void check_step(double dt, double limit) {
  if (!(dt > 0.0)) throw ParameterError("time step must be positive");
  if (dt > limit * (1.0 + 1e-12))
    throw ParameterError("time step " + std::to_string(dt) + " exceeds stability limit " +
                         std::to_string(limit));
}

// ---------------------------------------------------------------------------
// Stencils

inline void laplacian_1d(std::span<const double> f, double h, Boundary bc,
                         std::span<double> out) {
  const std::size_t n = f.size();
  if (n < 3) throw ParameterError("laplacian_1d: field needs at least 3 points");
  if (out.size() != n) throw ParameterError("laplacian_1d: output size mismatch");
  const double ih2 = 1.0 / (h * h);
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) * ih2;
  if (bc == Boundary::no_flux) {
    out[0] = (f[1] - f[0]) * ih2;
    out[n - 1] = (f[n - 2] - f[n - 1]) * ih2;
  } else {
    out[0] = 0.0;
    out[n - 1] = 0.0;
  }
}

inline std::vector<double> laplacian_1d(std::span<const double> f, double h, Boundary bc) {
  std::vector<double> out(f.size());
  laplacian_1d(f, h, bc, out);
  return out;
}

/// f'' + (d-1)/r f' on r_i = i h; regular limit 2d (f1 - f0)/h^2 at r = 0,
/// zero flux at the outer end.
inline void laplacian_radial(std::span<const double> f, double h, int dim,
                             std::span<double> out) {
  if (dim == 1) throw ParameterError("laplacian_radial: dim 1 is Cartesian, use laplacian_1d");
  if (dim != 2 && dim != 3) throw ParameterError("laplacian_radial: dim must be 2 or 3");
  const std::size_t n = f.size();
  if (n < 3) throw ParameterError("laplacian_radial: field needs at least 3 points");
  if (out.size() != n) throw ParameterError("laplacian_radial: output size mismatch");
  const double ih2 = 1.0 / (h * h);
  const double dm1 = dim - 1;
  out[0] = 2.0 * dim * (f[1] - f[0]) * ih2;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double curv = dm1 / (2.0 * static_cast<double>(i));
    out[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1] + curv * (f[i + 1] - f[i - 1])) * ih2;
  }
  const std::size_t l = n - 1;
  const double curv = dm1 / (2.0 * static_cast<double>(l));
  out[l] = (f[l - 1] - f[l] + curv * (f[l] - f[l - 1])) * ih2;
}

inline std::vector<double> laplacian_radial(std::span<const double> f, double h, int dim) {
  std::vector<double> out(f.size());
  laplacian_radial(f, h, dim, out);
  return out;
}

// ---------------------------------------------------------------------------
// Coupled Cartesian system

/// Owns scratch buffers for repeated in-place stepping of the coupled system.
class CoupledStepper {
 public:
  CoupledStepper(Grid1D grid, ModelParams params, Boundary bc)
      : grid_(grid),
        params_(validate_params(params)),
        bc_(bc),
        lap_phi_(grid.size()),
        lap_u_(grid.size()),
        phi_t_(grid.size()) {
    if (grid.geometry() != Geometry::cartesian)
      throw ParameterError("coupled system needs a Cartesian grid");
  }

  double stability_limit() const { return coupled_stability_limit(grid_.spacing(), params_); }

  /// One forward-Euler step; phi_t is evaluated first and fed into the heat
  /// equation.
  void step(FieldState& s, double dt) {
    check_state(s, grid_);
    check_step(dt, stability_limit());
    const std::size_t n = grid_.size();
    const double h = grid_.spacing();
    const double e2 = params_.epsilon * params_.epsilon;
    const double lam = params_.lambda;
    const double ell = params_.latent_heat;
    rebase_clock(s.time, dt);
    laplacian_1d(s.phi, h, bc_, lap_phi_);
    laplacian_1d(s.u, h, bc_, lap_u_);
    for (std::size_t i = 0; i < n; ++i)
      phi_t_[i] = e2 * lap_phi_[i] + potential::reaction(s.phi[i]) + lam * s.u[i];
    if (bc_ == Boundary::dirichlet) phi_t_[0] = phi_t_[n - 1] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s.phi[i] += dt * phi_t_[i];
      s.u[i] += dt * (lap_u_[i] + ell * phi_t_[i]);
    }
    ++clock_steps_;
    s.time = clock_t0_ + static_cast<double>(clock_steps_) * dt;
    check_finite(s);
  }

  /// Forces the next step to restart the time = t0 + k dt count from the
  /// state's own time.
  void reset_clock() { clock_dt_ = 0.0; }

  const Grid1D& grid() const noexcept { return grid_; }
  const ModelParams& params() const noexcept { return params_; }
  Boundary boundary() const noexcept { return bc_; }

 private:
  Grid1D grid_;
  ModelParams params_;
  Boundary bc_;
  std::vector<double> lap_phi_, lap_u_, phi_t_;
  std::size_t clock_steps_{0};
  double clock_t0_{0.0};
  double clock_dt_{0.0};

  void rebase_clock(double t, double dt) {
    if (dt == clock_dt_) return;
    clock_t0_ = t;
    clock_steps_ = 0;
    clock_dt_ = dt;
  }
};

inline FieldState step_coupled(const FieldState& state, const Grid1D& grid, const ModelParams& p,
                               double dt, Boundary bc = Boundary::no_flux) {
  CoupledStepper stepper(grid, p, bc);
  FieldState next = state;
  stepper.step(next, dt);
  return next;
}

/// Bulk values far from a steadily moving planar front: liquid at
/// u = -delta, solid at the temperature fixed by the heat balance
/// u_s - l phi_s = u_l - l phi_l, each phase at its tilted equilibrium.
/// Reduces to (1, -1, 1 - delta, -delta) when lambda = 0.
struct FarField {
  double phi_solid;
  double phi_liquid;
  double u_solid;
  double u_liquid;
};

inline FarField steady_far_field(const ModelParams& p) {
  FarField f{};
  f.u_liquid = -p.delta;
  f.phi_liquid = potential::bulk_equilibrium(p.lambda * f.u_liquid, -1);
  f.u_solid = 1.0 - p.delta;
  for (int it = 0; it < 200; ++it) {
    f.phi_solid = potential::bulk_equilibrium(p.lambda * f.u_solid, 1);
    const double next = f.u_liquid + p.latent_heat * (f.phi_solid - f.phi_liquid);
    const bool done = std::abs(next - f.u_solid) < 1e-15;
    f.u_solid = next;
    if (done) break;
  }
  f.phi_solid = potential::bulk_equilibrium(p.lambda * f.u_solid, 1);
  return f;
}

/// Initial data for coupled runs: solid (phi > 0) left of x0, a kink in phi,
/// and either a temperature step or the exponential ansatz
/// u = u_liquid + (u_solid - u_liquid) exp(-V (x - x0)) right of x0.
struct CoupledInit {
  enum class Temperature { step, exponential };
  double x0{0.0};
  Temperature temperature{Temperature::step};
  double u_solid{0.0};
  double u_liquid{0.0};
  double velocity{0.0};
  /// Scale the kink between the tilted bulk values of phi at u_solid and
  /// u_liquid instead of +-1.
  bool equilibrium_phases{false};
};

inline FieldState make_coupled_initial(const Grid1D& grid, const ModelParams& p,
                                       const CoupledInit& init) {
  FieldState s(grid.size());
  double phi_s = 1.0, phi_l = -1.0;
  if (init.equilibrium_phases) {
    phi_s = potential::bulk_equilibrium(p.lambda * init.u_solid, 1);
    phi_l = potential::bulk_equilibrium(p.lambda * init.u_liquid, -1);
  }
  const bool step = init.temperature == CoupledInit::Temperature::step;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i) - init.x0;
    s.phi[i] = 0.5 * (phi_s + phi_l) - 0.5 * (phi_s - phi_l) * potential::kink(x, p.epsilon);
    if (x < 0.0)
      s.u[i] = init.u_solid;
    else if (step)
      s.u[i] = x > 0.0 ? init.u_liquid : 0.5 * (init.u_solid + init.u_liquid);
    else
      s.u[i] = init.u_liquid + (init.u_solid - init.u_liquid) * std::exp(-init.velocity * x);
  }
  return s;
}

struct CoupledRun {
  std::vector<InterfaceObservation> observations;
  std::vector<FieldState> snapshots;  ///< filled only when requested
  FieldState final_state;
  std::size_t steps{0};
};

inline InterfaceObservation observe_planar(const FieldState& s, const Grid1D& grid,
                                           std::size_t stencil_offset = 3) {
  InterfaceObservation obs;
  obs.time = s.time;
  obs.position = interface::locate_zero(s.phi, grid);
  obs.curvature = 0.0;
  obs.u_at_interface = interface::interpolate(s.u, grid, obs.position);
  obs.flux_jump = interface::flux_jump_feasible(grid, obs.position, stencil_offset)
                      ? interface::flux_jump(s.u, s.phi, grid, obs.position, stencil_offset)
                      : std::nan("");
  return obs;
}

/// Repeated step_coupled until t_end or max_steps, observing the interface
/// every snapshot_every steps (and at the start and end).
inline CoupledRun run_coupled(const FieldState& init, const Grid1D& grid, const ModelParams& p,
                              const StepControl& ctrl, Boundary bc = Boundary::no_flux,
                              bool keep_snapshots = false) {
  check_state(init, grid);
  check_finite(init);
  if (ctrl.max_steps < 1) throw ParameterError("max_steps must be at least 1");
  if (ctrl.snapshot_every < 1) throw ParameterError("snapshot_every must be at least 1");
  CoupledStepper stepper(grid, p, bc);
  CoupledRun run;
  FieldState s = init;
  auto record = [&] {
    run.observations.push_back(observe_planar(s, grid));
    if (keep_snapshots) run.snapshots.push_back(s);
  };
  record();
  const double t0 = init.time;
  if (ctrl.t_end > t0) {
    check_step(ctrl.dt, stepper.stability_limit());
    const auto total = static_cast<std::size_t>(std::ceil((ctrl.t_end - t0) / ctrl.dt - 1e-9));
    const std::size_t steps = std::min(total, ctrl.max_steps);
    for (std::size_t k = 1; k <= steps; ++k) {
      stepper.step(s, ctrl.dt);
      if (k % ctrl.snapshot_every == 0 || k == steps) record();
    }
    run.steps = steps;
  }
  if (run.observations.size() >= 2) {
    std::vector<double> t, x;
    for (const auto& o : run.observations) {
      t.push_back(o.time);
      x.push_back(o.position);
    }
    const auto v = interface::front_velocity(x, t);
    for (std::size_t i = 0; i < v.size(); ++i) run.observations[i].velocity = v[i];
  }
  run.final_state = std::move(s);
  return run;
}

/// Grid sum of (u - l phi) times h; invariant of the coupled system under
/// no-flux boundaries.
inline double heat_content(const FieldState& s, const Grid1D& grid, double latent_heat) {
  long double sum = 0.0L;
  for (std::size_t i = 0; i < s.size(); ++i)
    sum += static_cast<long double>(s.u[i]) -
           static_cast<long double>(latent_heat) * static_cast<long double>(s.phi[i]);
  return static_cast<double>(sum * static_cast<long double>(grid.spacing()));
}

// ---------------------------------------------------------------------------
// Radial single-field equation

class RadialStepper {
 public:
  RadialStepper(Grid1D grid, ModelParams params)
      : grid_(grid), params_(validate_params(params)), lap_(grid.size()) {
    if (grid.geometry() != Geometry::radial || grid.origin() != 0.0)
      throw ParameterError("radial stepping needs a radial grid with origin 0");
    if (params_.dim == 1) throw ParameterError("radial stepping needs dim 2 or 3");
  }

  double stability_limit() const { return radial_stability_limit(grid_.spacing(), params_); }

  void step(FieldState& s, double dt) {
    if (s.phi.size() != grid_.size()) throw ParameterError("radial state size mismatch");
    check_step(dt, stability_limit());
    const double e2 = params_.epsilon * params_.epsilon;
    rebase_clock(s.time, dt);
    laplacian_radial(s.phi, grid_.spacing(), params_.dim, lap_);
    for (std::size_t i = 0; i < s.phi.size(); ++i)
      s.phi[i] += dt * (e2 * lap_[i] + potential::reaction(s.phi[i]));
    ++clock_steps_;
    s.time = clock_t0_ + static_cast<double>(clock_steps_) * dt;
    for (std::size_t i = 0; i < s.phi.size(); ++i)
      if (!std::isfinite(s.phi[i])) throw BlowUpError(i, s.time);
  }

  void reset_clock() { clock_dt_ = 0.0; }

 private:
  Grid1D grid_;
  ModelParams params_;
  std::vector<double> lap_;
  std::size_t clock_steps_{0};
  double clock_t0_{0.0};
  double clock_dt_{0.0};

  void rebase_clock(double t, double dt) {
    if (dt == clock_dt_) return;
    clock_t0_ = t;
    clock_steps_ = 0;
    clock_dt_ = dt;
  }
};

inline FieldState step_radial(const FieldState& state, const Grid1D& grid, const ModelParams& p,
                              double dt) {
  RadialStepper stepper(grid, p);
  FieldState next = state;
  stepper.step(next, dt);
  return next;
}

struct RadialShrinkage {
  RadiusSeries series;
  FieldState final_state;
};

/// Disc (d = 2) or ball (d = 3) of the phi = +1 phase of radius R0 in a
/// phi = -1 background, integrated until R < 5 eps, t_end or max_steps.
inline RadialShrinkage run_radial_shrinkage(const ModelParams& p, double r0, const Grid1D& grid,
                                            const StepControl& ctrl) {
  validate_params(p);
  if (p.dim != 2 && p.dim != 3) throw ParameterError("radial shrinkage needs dim 2 or 3");
  if (r0 < 10.0 * p.epsilon) throw ParameterError("R0 must be at least 10 epsilon");
  if (grid.back() < 2.0 * r0) throw ParameterError("grid extent must be at least 2 R0");
  if (ctrl.snapshot_every < 1) throw ParameterError("snapshot_every must be at least 1");
  RadialStepper stepper(grid, p);
  check_step(ctrl.dt, stepper.stability_limit());

  FieldState s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s.phi[i] = -potential::kink(grid.x(i) - r0, p.epsilon);

  RadialShrinkage out;
  out.series.params = p;
  auto record = [&] {
    const double r = interface::locate_zero(s.phi, grid);
    out.series.times.push_back(s.time);
    out.series.radii.push_back(r);
    return r;
  };
  double r = record();
  const auto total = ctrl.t_end > 0.0
                         ? static_cast<std::size_t>(std::ceil(ctrl.t_end / ctrl.dt - 1e-9))
                         : std::size_t{0};
  const std::size_t steps = std::min(total, ctrl.max_steps);
  for (std::size_t k = 1; k <= steps && r >= 5.0 * p.epsilon; ++k) {
    stepper.step(s, ctrl.dt);
    if (k % ctrl.snapshot_every == 0 || k == steps) r = record();
  }
  out.final_state = std::move(s);
  return out;
}

// ---------------------------------------------------------------------------
// Moving-frame steady state

struct ProfileResult {
  FieldState state;
  double velocity{0.0};
  bool converged{false};
  double residual{0.0};
  std::size_t iterations{0};
};

struct TravelingWaveControl {
  double tol{1e-8};
  std::size_t max_sweeps{20'000'000};
  double dt{0.0};  ///< pseudo-time step; 0 selects 0.9 of the stability limit
};

/**
 * Relaxes
 *   V phi' + eps^2 phi'' + phi - phi^3 + lambda u = 0,
 *   V u' + u'' - l V phi' = 0
 * with Dirichlet data from steady_far_field: u(L) = -delta, the solid
 * temperature from the heat balance and phi at the tilted bulk equilibria
 * (phi(-L) = 1, phi(L) = -1, u(-L) = 1 - delta for lambda = 0).
 *
 * The grid must be symmetric with a node at x = 0. Each sweep selects V so
 * that the pseudo-time derivative of phi at x = 0 vanishes, which keeps the
 * zero crossing pinned there.
 */
inline ProfileResult solve_traveling_wave(const ModelParams& params, const Grid1D& grid,
                                          double v_init, const TravelingWaveControl& ctrl = {}) {
  const ModelParams p = validate_params(params);
  if (!(ctrl.tol > 0.0)) throw ParameterError("traveling wave: tol must be positive");
  if (grid.geometry() != Geometry::cartesian)
    throw ParameterError("traveling wave needs a Cartesian grid");
  const std::size_t n = grid.size();
  const std::size_t c = n / 2;
  if (n % 2 == 0 || std::abs(grid.x(c)) > 1e-9 * grid.spacing() * static_cast<double>(n))
    throw ParameterError("traveling wave needs a symmetric grid with a node at x = 0");

  const double h = grid.spacing();
  const double limit = coupled_stability_limit(h, p);
  const double dt = ctrl.dt > 0.0 ? ctrl.dt : 0.9 * limit;
  check_step(dt, limit);

  const double e2 = p.epsilon * p.epsilon;
  const double ell = p.latent_heat;
  const double lam = p.lambda;
  const double ih2 = 1.0 / (h * h);
  const double i2h = 1.0 / (2.0 * h);

  const FarField far = steady_far_field(p);
  ProfileResult res;
  FieldState& s = res.state;
  s = FieldState(n);
  const double mid = 0.5 * (far.phi_solid + far.phi_liquid);
  const double half = 0.5 * (far.phi_solid - far.phi_liquid);
  const double shift = -p.epsilon * std::numbers::sqrt2 * std::atanh(mid / half);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid.x(i);
    s.phi[i] = mid - half * potential::kink(x - shift, p.epsilon);
    if (x < 0.0)
      s.u[i] = far.u_solid;
    else if (v_init > 0.0)
      s.u[i] = far.u_liquid + (far.u_solid - far.u_liquid) * std::exp(-v_init * x);
    else
      s.u[i] = x > 0.0 ? far.u_liquid : 0.5 * (far.u_solid + far.u_liquid);
  }
  // The relaxation keeps phi(0) fixed, so start it exactly at the crossing.
  s.phi[c] = 0.0;
  s.phi.front() = far.phi_solid;
  s.phi.back() = far.phi_liquid;
  s.u.front() = far.u_solid;
  s.u.back() = far.u_liquid;

  std::vector<double> rest(n, 0.0), dphi(n, 0.0), phi_t(n, 0.0), u_t(n, 0.0);
  double v = v_init;
  for (std::size_t it = 0;; ++it) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      dphi[i] = (s.phi[i + 1] - s.phi[i - 1]) * i2h;
      rest[i] = e2 * (s.phi[i - 1] - 2.0 * s.phi[i] + s.phi[i + 1]) * ih2 +
                potential::reaction(s.phi[i]) + lam * s.u[i];
    }
    v = -rest[c] / dphi[c];
    double r = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      phi_t[i] = v * dphi[i] + rest[i];
      u_t[i] = v * (s.u[i + 1] - s.u[i - 1]) * i2h +
               (s.u[i - 1] - 2.0 * s.u[i] + s.u[i + 1]) * ih2 - ell * v * dphi[i];
      r = std::max({r, std::abs(phi_t[i]), std::abs(u_t[i])});
    }
    if (!std::isfinite(r) || !std::isfinite(v)) {
      res.velocity = v;
      res.residual = r;
      res.iterations = it;
      res.converged = false;
      return res;
    }
    if (r <= ctrl.tol || it >= ctrl.max_sweeps) {
      res.velocity = v;
      res.residual = r;
      res.iterations = it;
      res.converged = r <= ctrl.tol;
      return res;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      s.phi[i] += dt * phi_t[i];
      s.u[i] += dt * u_t[i];
    }
    s.time += dt;
  }
}

}  // namespace pfstefan
