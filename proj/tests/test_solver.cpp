#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "pfstefan/interface.hpp"
#include "pfstefan/potential.hpp"
#include "pfstefan/solver.hpp"

using namespace pfstefan;

namespace {

ModelParams fig2() {
  ModelParams p;
  p.lambda = 0.3;
  p.beta = 0.2572;
  p.delta = 0.6;
  return p;
}

std::vector<double> sample(const Grid1D& g, double (*f)(double)) {
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = f(g.x(i));
  return out;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

FieldState kink_state(const Grid1D& g, double eps) {
  FieldState s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) s.phi[i] = -potential::kink(g.x(i), eps);
  return s;
}

}  // namespace

TEST(Stability, Limits) {
  ModelParams p;
  EXPECT_DOUBLE_EQ(coupled_stability_limit(0.2, p), 0.01);
  p.epsilon = 2.0;
  EXPECT_DOUBLE_EQ(coupled_stability_limit(0.2, p), 0.0025);
  EXPECT_DOUBLE_EQ(coupled_stability_limit(10.0, p), max_reaction_dt);
  p.epsilon = 0.02;
  p.dim = 2;
  EXPECT_DOUBLE_EQ(radial_stability_limit(0.005, p), 0.0078125);
  EXPECT_THROW(check_step(0.02, 0.01), ParameterError);
  EXPECT_THROW(check_step(0.0, 0.01), ParameterError);
  EXPECT_NO_THROW(check_step(0.01, 0.01));
}

TEST(Laplacian1D, ConstantIsZero) {
  const std::vector<double> f(10, 3.7);
  for (const auto bc : {Boundary::no_flux, Boundary::dirichlet})
    for (const double v : laplacian_1d(f, 0.3, bc)) EXPECT_EQ(v, 0.0);
}

TEST(Laplacian1D, QuadraticIsExact) {
  for (const double h : {0.5, 0.1, 0.03125}) {
    const Grid1D g(41, h, -1.3);
    const auto lap = laplacian_1d(sample(g, [](double x) { return x * x; }), h, Boundary::dirichlet);
    for (std::size_t i = 1; i + 1 < g.size(); ++i) EXPECT_NEAR(lap[i], 2.0, 1e-9);
  }
}

TEST(Laplacian1D, SineSecondOrder) {
  const Grid1D g(629, 0.01);
  const auto lap = laplacian_1d(sample(g, [](double x) { return std::sin(x); }), 0.01, Boundary::no_flux);
  for (std::size_t i = 1; i + 1 < g.size(); ++i) EXPECT_NEAR(lap[i], -std::sin(g.x(i)), 1e-4);
}

TEST(Laplacian1D, NoFluxSumsToZero) {
  const Grid1D g(50, 0.1);
  const auto f = sample(g, [](double x) { return std::exp(std::sin(3 * x)); });
  const auto lap = laplacian_1d(f, 0.1, Boundary::no_flux);
  double sum = 0.0;
  for (const double v : lap) sum += v;
  EXPECT_NEAR(sum, 0.0, 1e-11);
}

TEST(Laplacian1D, TooShort) {
  EXPECT_THROW(laplacian_1d(std::vector<double>{1.0, 2.0}, 0.1, Boundary::no_flux), ParameterError);
}

TEST(LaplacianRadial, ConstantIsZero) {
  const std::vector<double> f(12, -1.0);
  for (const int d : {2, 3})
    for (const double v : laplacian_radial(f, 0.1, d)) EXPECT_EQ(v, 0.0);
}

TEST(LaplacianRadial, SquareOfRadius) {
  const Grid1D g(40, 0.05, 0.0, Geometry::radial);
  const auto f = sample(g, [](double r) { return r * r; });
  for (const int d : {2, 3}) {
    const auto lap = laplacian_radial(f, 0.05, d);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) EXPECT_NEAR(lap[i], 2.0 * d, 1e-10) << i;
  }
}

TEST(LaplacianRadial, RejectsDimOne) {
  const std::vector<double> f(8, 0.0);
  EXPECT_THROW(laplacian_radial(f, 0.1, 1), ParameterError);
}

TEST(StepCoupled, Equilibria) {
  const Grid1D g(21, 0.2);
  ModelParams p;
  const FieldState one(21, 1.0, 0.0);
  const FieldState next = step_coupled(one, g, p, 0.01);
  EXPECT_EQ(next.phi, one.phi);
  EXPECT_EQ(next.u, one.u);
  EXPECT_DOUBLE_EQ(next.time, 0.01);

  p.lambda = 0.7;
  const FieldState zero(21, 0.0, 0.0);
  const FieldState z = step_coupled(zero, g, p, 0.01, Boundary::dirichlet);
  EXPECT_EQ(z.phi, zero.phi);
  EXPECT_EQ(z.u, zero.u);
}

TEST(StepCoupled, OperatorOrder) {
  const Grid1D g(5, 0.5);
  ModelParams p;
  p.lambda = 0.4;
  p.latent_heat = 0.5;
  FieldState s({0.1, 0.3, -0.2, 0.5, 0.0}, {1.0, -1.0, 0.5, 0.25, 2.0});
  const double dt = 0.05;
  const FieldState next = step_coupled(s, g, p, dt);
  // Hand evaluation at node 2.
  const double lap_phi = (0.3 - 2 * -0.2 + 0.5) / 0.25;
  const double lap_u = (-1.0 - 2 * 0.5 + 0.25) / 0.25;
  const double phi_t = lap_phi + (-0.2 + 0.008) + 0.4 * 0.5;
  EXPECT_NEAR(next.phi[2], -0.2 + dt * phi_t, 1e-15);
  EXPECT_NEAR(next.u[2], 0.5 + dt * (lap_u + 0.5 * phi_t), 1e-15);
  // Node 0 under no-flux: ghost equals the boundary value.
  const double phi_t0 = (0.3 - 0.1) / 0.25 + (0.1 - 0.001) + 0.4 * 1.0;
  EXPECT_NEAR(next.u[0], 1.0 + dt * ((-1.0 - 1.0) / 0.25 + 0.5 * phi_t0), 1e-15);
}

TEST(StepCoupled, DirichletEndsFixed) {
  const Grid1D g(11, 0.2);
  FieldState s(11, 0.5, 0.3);
  s.phi.front() = 1.0;
  s.u.back() = -0.6;
  const FieldState next = step_coupled(s, g, fig2(), 0.01, Boundary::dirichlet);
  EXPECT_EQ(next.phi.front(), 1.0);
  EXPECT_EQ(next.u.front(), 0.3);
  EXPECT_EQ(next.phi.back(), 0.5);
  EXPECT_EQ(next.u.back(), -0.6);
}

TEST(StepCoupled, KinkIsDiscretelySteady) {
  // A step changes phi by dt times the stencil truncation of the kink,
  // bounded by dt h^2 max|phi''''| / 12 with max|phi''''| < 1 for eps = 1.
  ModelParams p;
  std::vector<double> change;
  for (const double h : {0.2, 0.1}) {
    const Grid1D g = Grid1D::symmetric(20.0, h);
    const FieldState s = kink_state(g, 1.0);
    const double dt = 0.5 * coupled_stability_limit(h, p);
    const FieldState next = step_coupled(s, g, p, dt, Boundary::dirichlet);
    const double dphi = max_abs_diff(next.phi, s.phi);
    EXPECT_LE(dphi, dt * h * h / 10.0) << h;
    change.push_back(dphi / dt);
  }
  EXPECT_NEAR(change[0] / change[1], 4.0, 0.1);
}

TEST(StepCoupled, BlowUpNamesIndexAndTime) {
  const Grid1D g(9, 0.5);
  FieldState s(9, 0.0, 0.0);
  s.phi[4] = 1e120;
  s.time = 3.0;
  try {
    step_coupled(s, g, ModelParams{}, 0.01);
    FAIL() << "expected blow-up";
  } catch (const BlowUpError& e) {
    EXPECT_EQ(e.index(), 4u);
    EXPECT_DOUBLE_EQ(e.time(), 3.01);
  }
}

TEST(StepCoupled, RejectsUnstableStep) {
  const Grid1D g(9, 0.2);
  EXPECT_THROW(step_coupled(FieldState(9, 1.0, 0.0), g, ModelParams{}, 0.011), ParameterError);
  const Grid1D radial(9, 0.2, 0.0, Geometry::radial);
  EXPECT_THROW(step_coupled(FieldState(9, 1.0, 0.0), radial, ModelParams{}, 0.001), ParameterError);
}

TEST(StepRadial, UniformLiquidUnchanged) {
  const Grid1D g(50, 0.01, 0.0, Geometry::radial);
  ModelParams p;
  p.epsilon = 0.02;
  p.dim = 3;
  const FieldState s(50, -1.0, 0.0);
  const FieldState next = step_radial(s, g, p, 0.9 * radial_stability_limit(0.01, p));
  EXPECT_EQ(next.phi, s.phi);
}

TEST(StepRadial, DiscShrinks) {
  ModelParams p;
  p.epsilon = 0.02;
  p.dim = 2;
  const Grid1D g(301, 0.005, 0.0, Geometry::radial);
  FieldState s(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) s.phi[i] = -potential::kink(g.x(i) - 0.5, p.epsilon);
  const double r0 = interface::locate_zero(s.phi, g);
  RadialStepper stepper(g, p);
  const double dt = 0.9 * stepper.stability_limit();
  for (int k = 0; k < 3000; ++k) stepper.step(s, dt);
  EXPECT_LT(interface::locate_zero(s.phi, g), r0);
}

TEST(StepRadial, Preconditions) {
  ModelParams p;
  p.dim = 1;
  const Grid1D radial(20, 0.1, 0.0, Geometry::radial);
  EXPECT_THROW(RadialStepper(radial, p), ParameterError);
  p.dim = 2;
  EXPECT_THROW(RadialStepper(Grid1D(20, 0.1, 0.5, Geometry::radial), p), ParameterError);
  EXPECT_THROW(RadialStepper(Grid1D(20, 0.1), p), ParameterError);
}

TEST(FarField, DecoupledLimit) {
  ModelParams p = fig2();
  p.lambda = 0.0;
  const FarField f = steady_far_field(p);
  EXPECT_EQ(f.phi_solid, 1.0);
  EXPECT_EQ(f.phi_liquid, -1.0);
  EXPECT_NEAR(f.u_solid, 1.0 - p.delta, 1e-15);
  EXPECT_EQ(f.u_liquid, -p.delta);
}

TEST(FarField, HeatBalanceAndEquilibria) {
  const ModelParams p = fig2();
  const FarField f = steady_far_field(p);
  EXPECT_NEAR(f.u_solid - p.latent_heat * f.phi_solid, f.u_liquid - p.latent_heat * f.phi_liquid, 1e-14);
  EXPECT_NEAR(potential::reaction(f.phi_solid) + p.lambda * f.u_solid, 0.0, 1e-14);
  EXPECT_NEAR(potential::reaction(f.phi_liquid) + p.lambda * f.u_liquid, 0.0, 1e-14);
  EXPECT_GT(f.phi_solid, 1.0);
  EXPECT_LT(f.phi_liquid, -1.0);
}

TEST(RunCoupled, ZeroStepsReturnsInit) {
  const Grid1D g = Grid1D::symmetric(10.0, 0.2);
  const FieldState init = kink_state(g, 1.0);
  StepControl ctrl;
  ctrl.dt = 0.01;
  ctrl.t_end = 0.0;
  const CoupledRun run = run_coupled(init, g, ModelParams{}, ctrl);
  EXPECT_EQ(run.steps, 0u);
  EXPECT_EQ(run.final_state, init);
  ASSERT_EQ(run.observations.size(), 1u);
  EXPECT_EQ(run.observations[0].time, 0.0);
}

TEST(RunCoupled, DecoupledKinkStaysPut) {
  const Grid1D g = Grid1D::symmetric(20.0, 0.2);
  CoupledInit init;
  init.x0 = 0.3;
  StepControl ctrl;
  ctrl.dt = 0.009;
  ctrl.t_end = 50.0;
  ctrl.snapshot_every = 100;
  const CoupledRun run = run_coupled(make_coupled_initial(g, ModelParams{}, init), g, ModelParams{}, ctrl);
  const double x0 = run.observations.front().position;
  EXPECT_NEAR(x0, 0.3, 1e-3);
  for (const auto& o : run.observations) EXPECT_NEAR(o.position, x0, 0.2);
  EXPECT_GE(run.final_state.time, 50.0 - 1e-9);
  EXPECT_LT(run.final_state.time, 50.0 + ctrl.dt);
}

TEST(RunCoupled, UndercooledStepRelaxesToConstantVelocity) {
  const ModelParams p = fig2();
  const FarField far = steady_far_field(p);
  const Grid1D g(1726, 0.2, -60.0);
  CoupledInit init;
  init.u_solid = far.u_solid;
  init.u_liquid = far.u_liquid;
  init.equilibrium_phases = true;
  StepControl ctrl;
  ctrl.dt = 0.9 * coupled_stability_limit(0.2, p);
  ctrl.t_end = 600.0;
  ctrl.snapshot_every = 111;
  const CoupledRun run = run_coupled(make_coupled_initial(g, p, init), g, p, ctrl, Boundary::dirichlet);
  const auto& obs = run.observations;
  const std::size_t begin = 3 * obs.size() / 4;
  double mean = 0.0, var = 0.0;
  for (std::size_t i = begin; i < obs.size(); ++i) mean += obs[i].velocity;
  mean /= static_cast<double>(obs.size() - begin);
  for (std::size_t i = begin; i < obs.size(); ++i) var += std::pow(obs[i].velocity - mean, 2);
  var /= static_cast<double>(obs.size() - begin);
  EXPECT_GT(mean, 0.0);
  EXPECT_LT(var, 0.01 * mean * mean);
}

TEST(RunCoupled, HeatContentConservedUnderNoFlux) {
  ModelParams p = fig2();
  const Grid1D g = Grid1D::symmetric(100.0, 0.25);
  CoupledInit init;
  init.u_solid = 3.0;
  init.u_liquid = -2.0;
  const FieldState s0 = make_coupled_initial(g, p, init);
  StepControl ctrl;
  ctrl.dt = 0.9 * coupled_stability_limit(0.25, p);
  ctrl.t_end = 50.0;
  ctrl.snapshot_every = 1000;
  const CoupledRun run = run_coupled(s0, g, p, ctrl, Boundary::no_flux);
  const double drift = std::abs(heat_content(run.final_state, g, p.latent_heat) - heat_content(s0, g, p.latent_heat));
  EXPECT_LE(drift / run.final_state.time, 1e-10);
}

TEST(RunCoupled, LongRunsStayFinite) {
  for (const double lam : {0.0, 0.1, 0.2, 0.3}) {
    ModelParams p = fig2();
    p.lambda = lam;
    const Grid1D g = Grid1D::symmetric(20.0, 0.2);
    CoupledInit init;
    const FarField far = steady_far_field(p);
    init.u_solid = far.u_solid;
    init.u_liquid = far.u_liquid;
    init.equilibrium_phases = true;
    FieldState s = make_coupled_initial(g, p, init);
    CoupledStepper stepper(g, p, Boundary::dirichlet);
    const double dt = 0.9 * stepper.stability_limit();
    EXPECT_NO_THROW(for (int k = 0; k < 100000; ++k) stepper.step(s, dt)) << lam;
  }
  ModelParams p;
  p.epsilon = 0.02;
  for (const int d : {2, 3}) {
    p.dim = d;
    const Grid1D g(251, 0.005, 0.0, Geometry::radial);
    FieldState s(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) s.phi[i] = -potential::kink(g.x(i) - 0.5, p.epsilon);
    RadialStepper stepper(g, p);
    const double dt = 0.9 * stepper.stability_limit();
    EXPECT_NO_THROW(for (int k = 0; k < 100000; ++k) stepper.step(s, dt)) << d;
  }
}

TEST(RadialShrinkage, InitialRadiusAndPreconditions) {
  ModelParams p;
  p.epsilon = 0.02;
  p.dim = 2;
  const Grid1D g(251, 0.005, 0.0, Geometry::radial);
  StepControl ctrl;
  ctrl.dt = 0.9 * radial_stability_limit(0.005, p);
  ctrl.t_end = 1.0;
  ctrl.snapshot_every = 10;
  const auto run = run_radial_shrinkage(p, 0.5, g, ctrl);
  EXPECT_NEAR(run.series.radii.front(), 0.5, 0.005);
  EXPECT_EQ(run.series.times.front(), 0.0);
  EXPECT_THROW(run_radial_shrinkage(p, 0.15, g, ctrl), ParameterError);
  EXPECT_THROW(run_radial_shrinkage(p, 0.7, g, ctrl), ParameterError);
}

TEST(RadialShrinkage, SquareRadiusSlope) {
  for (const int d : {2, 3}) {
    ModelParams p;
    p.epsilon = 0.02;
    p.dim = d;
    const Grid1D g(251, 0.005, 0.0, Geometry::radial);
    StepControl ctrl;
    ctrl.dt = 0.9 * radial_stability_limit(0.005, p);
    ctrl.t_end = 1000.0;
    ctrl.snapshot_every = static_cast<std::size_t>(0.5 / ctrl.dt);
    const auto run = run_radial_shrinkage(p, 0.5, g, ctrl);
    const auto fit = interface::fit_power_law(run.series);
    const double oracle = -2.0 * p.epsilon * p.epsilon * (d - 1);
    EXPECT_NEAR(fit.square_slope / oracle, 1.0, 0.05) << d;
    EXPECT_LT(run.series.radii.back(), 5.0 * p.epsilon);
    for (std::size_t i = 1; i < run.series.radii.size(); ++i)
      EXPECT_LT(run.series.radii[i], run.series.radii[i - 1]);
  }
}

TEST(TravelingWave, DecoupledGivesStationaryKink) {
  ModelParams p;
  p.delta = 0.6;
  const double h = 0.2;
  const Grid1D g = Grid1D::symmetric(30.0, h);
  TravelingWaveControl ctrl;
  ctrl.tol = 1e-9;
  const ProfileResult r = solve_traveling_wave(p, g, 0.0, ctrl);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.residual, 1e-9);
  EXPECT_NEAR(r.velocity, 0.0, 1e-3);
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    err = std::max(err, std::abs(r.state.phi[i] + potential::kink(g.x(i), 1.0)));
  EXPECT_LE(err, 5.0 * h * h);
}

TEST(TravelingWave, ReferenceParameters) {
  const ModelParams p = fig2();
  const Grid1D g = Grid1D::symmetric(60.0, 0.2);
  const ProfileResult r = solve_traveling_wave(p, g, 0.25);
  ASSERT_TRUE(r.converged);
  EXPECT_LE(r.residual, 1e-8);
  EXPECT_EQ(r.state.u.back(), -0.6);
  EXPECT_NEAR(r.state.phi[g.size() / 2], 0.0, 1e-15);
  // The bulk regions are flat to far below the residual, so monotonicity is
  // judged at the solver tolerance scale.
  const double slack = 100.0 * 1e-8;
  for (std::size_t i = 1; i < g.size(); ++i) {
    EXPECT_LE(r.state.phi[i], r.state.phi[i - 1] + slack) << i;
    EXPECT_LE(r.state.u[i], r.state.u[i - 1] + slack) << i;
  }
  EXPECT_GT(r.state.phi.front() - r.state.phi.back(), 2.0);
  EXPECT_GT(r.state.u.front() - r.state.u.back(), 1.0);
  EXPECT_GT(r.velocity, 0.0);
  // The exact steady heat balance fixes the solid temperature.
  const FarField far = steady_far_field(p);
  EXPECT_NEAR(r.state.u.front(), far.u_solid, 1e-15);
}

TEST(TravelingWave, GridConvergence) {
  const ModelParams p = fig2();
  std::vector<double> v;
  for (const double h : {0.4, 0.2, 0.1}) {
    const ProfileResult r = solve_traveling_wave(p, Grid1D::symmetric(60.0, h), 0.25);
    ASSERT_TRUE(r.converged) << h;
    v.push_back(r.velocity);
  }
  EXPECT_GE(std::abs(v[0] - v[1]) / std::abs(v[1] - v[2]), 3.5);
}

TEST(TravelingWave, LowerLambdaProfileIsThinner) {
  // Width of the low-lambda, higher-undercooling front against the
  // reference front.
  const ModelParams ref = fig2();
  const Grid1D g0 = Grid1D::symmetric(60.0, 0.2);
  const ProfileResult r0 = solve_traveling_wave(ref, g0, 0.25);
  ModelParams low = ref;
  low.lambda = 0.1;
  low.delta = 0.7;
  const Grid1D g1 = Grid1D::symmetric(160.0, 0.2);
  const ProfileResult r1 = solve_traveling_wave(low, g1, 0.06);
  ASSERT_TRUE(r0.converged);
  ASSERT_TRUE(r1.converged);
  EXPECT_LT(interface::interface_width(r1.state.phi, g1), interface::interface_width(r0.state.phi, g0));
}

TEST(TravelingWave, NonConvergenceIsReported) {
  TravelingWaveControl ctrl;
  ctrl.max_sweeps = 10;
  const ProfileResult r = solve_traveling_wave(fig2(), Grid1D::symmetric(20.0, 0.2), 0.2, ctrl);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.residual, ctrl.tol);
  EXPECT_EQ(r.iterations, 10u);
}

TEST(TravelingWave, Preconditions) {
  EXPECT_THROW(solve_traveling_wave(fig2(), Grid1D(100, 0.2, -10.0), 0.2), ParameterError);
  TravelingWaveControl ctrl;
  ctrl.tol = 0.0;
  EXPECT_THROW(solve_traveling_wave(fig2(), Grid1D::symmetric(10.0, 0.2), 0.2, ctrl), ParameterError);
}
