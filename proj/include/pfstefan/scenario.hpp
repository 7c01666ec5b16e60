#pragma once

// Scenario runner: flat `key = value` configs, the five registered
// verification pipelines and their CSV outputs.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pfstefan/core.hpp"
#include "pfstefan/interface.hpp"
#include "pfstefan/potential.hpp"
#include "pfstefan/report.hpp"
#include "pfstefan/sharp_oracle.hpp"
#include "pfstefan/solver.hpp"

namespace pfstefan {

inline constexpr std::string_view version_string = "0.1.0";

/// Malformed or inconsistent scenario configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::array<std::string_view, 5> scenario_names = {
    "radial-shrinkage", "traveling-wave", "coupled-relax", "lambda-sweep", "sqrt-t-check"};

inline bool is_scenario_name(std::string_view name) {
  return std::find(scenario_names.begin(), scenario_names.end(), name) != scenario_names.end();
}

/**
 * One runnable experiment. Keys not used by a scenario are ignored by it.
 *
 * length: radial extent (radial-shrinkage), half-length of the symmetric
 * frame grid (traveling-wave, coupled-relax, sqrt-t-check) or, when 0, a
 * per-lambda automatic half-length (lambda-sweep).
 * dt = 0 and snapshot_every = 0 select automatic values.
 */
struct Scenario {
  std::string name;
  ModelParams params;
  StepControl ctrl;
  std::filesystem::path output_dir{"out"};
  double h{0.2};
  double length{60.0};
  double r0{0.5};
  double tol{1e-8};
  double u_solid{3.0};
  double u_liquid{-2.0};
  double fit_from{0.0};  ///< 0: t_end / 10
  std::vector<double> lambdas{0.3, 0.2, 0.1};
  std::vector<std::size_t> stencil_offsets{2, 3, 4};
};

/// Committed defaults for each registered scenario.
inline Scenario default_scenario(std::string_view name) {
  if (!is_scenario_name(name)) throw ConfigError("unknown scenario '" + std::string(name) + "'");
  Scenario s;
  s.name = std::string(name);
  s.ctrl.dt = 0.0;
  s.ctrl.snapshot_every = 0;
  s.ctrl.max_steps = 100'000'000;
  s.params.beta = 0.2572;
  if (name == "radial-shrinkage") {
    s.params.epsilon = 0.02;
    s.params.dim = 2;
    s.r0 = 0.5;
    s.h = 0.005;
    s.length = 1.25;
    s.ctrl.t_end = 1000.0;
  } else if (name == "traveling-wave") {
    s.params.lambda = 0.3;
    s.params.delta = 0.6;
    s.ctrl.max_steps = 20'000'000;
  } else if (name == "coupled-relax") {
    s.params.lambda = 0.3;
    s.params.delta = 0.6;
    s.ctrl.t_end = 600.0;
  } else if (name == "lambda-sweep") {
    s.params.lambda = 0.3;
    s.params.delta = 0.6;
    s.length = 0.0;
    s.ctrl.max_steps = 20'000'000;
  } else {  // sqrt-t-check
    s.params.lambda = 0.3;
    s.h = 0.25;
    s.length = 300.0;
    s.ctrl.t_end = 1000.0;
  }
  return s;
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_double(std::string_view v, const std::string& key, std::size_t line) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError("invalid number for '" + key + "' (line " + std::to_string(line) + ")");
  return out;
}

inline std::size_t parse_count(std::string_view v, const std::string& key, std::size_t line) {
  std::size_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
    throw ConfigError("invalid count for '" + key + "' (line " + std::to_string(line) + ")");
  return out;
}

template <class F>
inline void for_each_item(std::string_view list, F&& f) {
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = list.find(',', pos);
    const auto item = trim(list.substr(pos, comma == std::string_view::npos ? list.npos : comma - pos));
    f(item);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
}

struct ConfigEntry {
  std::string value;
  std::size_t line;
};

}  // namespace detail

inline constexpr std::array<std::string_view, 22> config_keys = {
    "scenario", "output_dir", "epsilon", "lambda",  "alpha",      "beta",           "delta",     "latent_heat",
    "dim",      "R0",      "h",       "length",     "dt",             "t_end",     "snapshot_every",
    "max_steps", "tol",    "lambdas", "u_solid",    "u_liquid",       "fit_from",  "stencil_offsets"};

/// Parses `key = value` lines; '#' starts a comment. Missing keys keep the
/// scenario's defaults, `scenario` itself is required.
inline Scenario parse_config(std::string_view text) {
  std::map<std::string, detail::ConfigEntry> entries;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    ++lineno;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("malformed line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    const std::string value(detail::trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      throw ConfigError("malformed line " + std::to_string(lineno) + ": expected 'key = value'");
    if (std::find(config_keys.begin(), config_keys.end(), key) == config_keys.end())
      throw ConfigError("unknown key '" + key + "' (line " + std::to_string(lineno) + ")");
    if (entries.count(key))
      throw ConfigError("duplicate key '" + key + "' (line " + std::to_string(lineno) + ")");
    entries[key] = {value, lineno};
  }

  const auto it = entries.find("scenario");
  if (it == entries.end()) throw ConfigError("missing key 'scenario'");
  if (!is_scenario_name(it->second.value))
    throw ConfigError("unknown scenario '" + it->second.value + "' (line " +
                      std::to_string(it->second.line) + ")");
  Scenario s = default_scenario(it->second.value);

  for (const auto& [key, e] : entries) {
    const auto num = [&] { return detail::parse_double(e.value, key, e.line); };
    const auto count = [&] { return detail::parse_count(e.value, key, e.line); };
    if (key == "scenario") continue;
    else if (key == "output_dir") s.output_dir = e.value;
    else if (key == "epsilon") s.params.epsilon = num();
    else if (key == "lambda") s.params.lambda = num();
    else if (key == "alpha") s.params.alpha = num();
    else if (key == "beta") s.params.beta = num();
    else if (key == "delta") s.params.delta = num();
    else if (key == "latent_heat") s.params.latent_heat = num();
    else if (key == "dim") s.params.dim = static_cast<int>(count());
    else if (key == "R0") s.r0 = num();
    else if (key == "h") s.h = num();
    else if (key == "length") s.length = num();
    else if (key == "dt") s.ctrl.dt = num();
    else if (key == "t_end") s.ctrl.t_end = num();
    else if (key == "snapshot_every") s.ctrl.snapshot_every = count();
    else if (key == "max_steps") s.ctrl.max_steps = count();
    else if (key == "tol") s.tol = num();
    else if (key == "u_solid") s.u_solid = num();
    else if (key == "u_liquid") s.u_liquid = num();
    else if (key == "fit_from") s.fit_from = num();
    else if (key == "lambdas") {
      s.lambdas.clear();
      detail::for_each_item(e.value, [&](std::string_view v) {
        s.lambdas.push_back(detail::parse_double(v, key, e.line));
      });
    } else if (key == "stencil_offsets") {
      s.stencil_offsets.clear();
      detail::for_each_item(e.value, [&](std::string_view v) {
        s.stencil_offsets.push_back(detail::parse_count(v, key, e.line));
      });
    }
  }
  try {
    validate_params(s.params);
  } catch (const ParameterError& err) {
    throw ConfigError(err.what());
  }
  if (!(s.h > 0.0)) throw ConfigError("h must be positive");
  if (s.ctrl.dt < 0.0) throw ConfigError("dt must be non-negative");
  if (s.ctrl.max_steps < 1) throw ConfigError("max_steps must be at least 1");
  if (!(s.tol > 0.0)) throw ConfigError("tol must be positive");
  if (s.lambdas.empty()) throw ConfigError("lambdas must not be empty");
  return s;
}

inline Scenario load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

// ---------------------------------------------------------------------------
// Output helpers

/// Creates dir and proves it is writable; throws std::runtime_error otherwise.
inline void ensure_writable(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto probe = dir / ".write_probe";
  {
    std::ofstream f(probe);
    if (!f || !(f << "x")) throw std::runtime_error("output directory not writable: " + dir.string());
  }
  std::filesystem::remove(probe, ec);
}

inline void write_csv_file(const std::filesystem::path& path, const std::string& header,
                           const std::vector<std::vector<double>>& columns) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << header << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c) f << ',';
      f << detail::format_g17(columns[c][i]);
    }
    f << '\n';
  }
}

inline void write_state_file(const std::filesystem::path& path, const Grid1D& grid,
                             const FieldState& s) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  write_state_csv(f, grid, s);
}

namespace detail {

inline std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline std::size_t auto_snapshot(const Scenario& s, double dt, double interval) {
  if (s.ctrl.snapshot_every > 0) return s.ctrl.snapshot_every;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(interval / dt)));
}

/// Leading-order planar velocity 2 lambda (1 - delta) / m used for initial
/// guesses and domain sizing.
inline double kinetic_estimate(const ModelParams& p) {
  return 2.0 * p.lambda * (1.0 - p.delta) / potential::surface_constant_exact;
}

/// Monotone up to slack; the bulk plateaus are flat far below the solver
/// residual, so a strict test would only measure relaxation noise.
inline bool monotone(const std::vector<double>& f, bool decreasing, double slack) {
  for (std::size_t i = 1; i < f.size(); ++i)
    if (decreasing ? f[i] > f[i - 1] + slack : f[i] < f[i - 1] - slack) return false;
  return true;
}

inline double kink_width(double eps, double level = 0.9) {
  return 2.0 * eps * std::numbers::sqrt2 * std::atanh(level);
}

struct LateVelocity {
  double slope;
  double variance_ratio;
};

/// Least-squares front velocity and velocity variance / mean^2 over the last
/// quarter of the observations.
inline LateVelocity late_velocity(const std::vector<InterfaceObservation>& obs) {
  const std::size_t begin = 3 * obs.size() / 4;
  std::vector<double> t, x;
  double mean = 0.0;
  for (std::size_t i = begin; i < obs.size(); ++i) {
    t.push_back(obs[i].time);
    x.push_back(obs[i].position);
    mean += obs[i].velocity;
  }
  mean /= static_cast<double>(t.size());
  double var = 0.0;
  for (std::size_t i = begin; i < obs.size(); ++i) var += (obs[i].velocity - mean) * (obs[i].velocity - mean);
  var /= static_cast<double>(t.size());
  const auto fit = interface::detail::least_squares(t, x);
  return {fit.slope, var / (mean * mean)};
}

inline void write_front_series(const std::filesystem::path& path,
                               const std::vector<InterfaceObservation>& obs) {
  std::vector<double> t, x, v;
  for (const auto& o : obs) {
    t.push_back(o.time);
    x.push_back(o.position);
    v.push_back(o.velocity);
  }
  write_csv_file(path, "t,front_position,front_velocity", {t, x, v});
}

inline ProfileResult traveling_wave(const Scenario& s, const ModelParams& p, const Grid1D& grid) {
  TravelingWaveControl tw;
  tw.tol = s.tol;
  tw.max_sweeps = s.ctrl.max_steps;
  tw.dt = s.ctrl.dt;
  return solve_traveling_wave(p, grid, p.lambda > 0.0 ? kinetic_estimate(p) : 0.0, tw);
}

// ---------------------------------------------------------------------------
// Pipelines

inline void run_radial(const Scenario& s, Report& r) {
  const ModelParams& p = s.params;
  const auto n = static_cast<std::size_t>(std::llround(s.length / s.h)) + 1;
  const Grid1D grid(n, s.h, 0.0, Geometry::radial);
  StepControl ctrl = s.ctrl;
  if (ctrl.dt == 0.0) ctrl.dt = 0.9 * radial_stability_limit(s.h, p);
  ctrl.snapshot_every = auto_snapshot(s, ctrl.dt, 0.5);

  const auto run = run_radial_shrinkage(p, s.r0, grid, ctrl);
  const auto& series = run.series;
  write_csv_file(s.output_dir / "series.csv", "t,R", {series.times, series.radii});
  write_state_file(s.output_dir / "final_state.csv", grid, run.final_state);

  const auto fit = interface::fit_power_law(series);
  const double oracle = sharp::mullins_square_rate(p.epsilon, p.dim);
  const double measured = std::abs(fit.square_slope);
  r.add("r2_slope_magnitude", measured, oracle, std::abs(relative_error(measured, oracle)) <= 0.05);
  r.add("initial_radius", series.radii.front(), s.r0,
        std::abs(series.radii.front() - s.r0) <= s.h);
  const int sign = fit.square_slope < 0.0 ? -1 : 1;
  r.add("r2_slope_sign", sign, -1, std::nullopt);
  const double t_last = series.times.back();
  try {
    r.add("final_radius", series.radii.back(),
          sharp::mullins_radius(s.r0, p.epsilon, p.dim, t_last, sign), std::nullopt);
  } catch (const sharp::ExtinctionError&) {
    r.diagnostics.push_back("sharp radius extinct before final sample");
  }
  r.diagnostics.push_back("samples " + std::to_string(series.times.size()) + ", t_final " +
                          tag(t_last) + ", fit over last half of samples");
}

inline void add_traveling_rows(const Scenario& s, const ModelParams& p, const Grid1D& grid,
                               const ProfileResult& tw, Report& r, bool flux_rows) {
  r.add("residual", tw.residual, s.tol, tw.converged);
  if (!tw.converged) {
    r.diagnostics.push_back("traveling wave did not converge in " + std::to_string(tw.iterations) +
                            " sweeps");
    return;
  }
  if (p.lambda == 0.0) {
    r.add("velocity", tw.velocity, 0.0, std::abs(tw.velocity) <= 1e-3);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      err = std::max(err, std::abs(tw.state.phi[i] + potential::kink(grid.x(i), p.epsilon)));
    const double bound = 5.0 * s.h * s.h / (p.epsilon * p.epsilon);
    r.add("kink_max_error", err, bound, err <= bound);
    return;
  }
  r.add("velocity_vs_sharp", tw.velocity, sharp::sharp_velocity(p.delta, p.beta), std::nullopt);
  r.add("u_far_field", tw.state.u.back(), -p.delta, tw.state.u.back() == -p.delta);
  const double slack = 100.0 * s.tol;
  const bool phi_mono = monotone(tw.state.phi, true, slack);
  const bool u_mono = monotone(tw.state.u, true, slack);
  r.add("phi_monotone", phi_mono ? 1.0 : 0.0, 1.0, phi_mono);
  r.add("u_monotone", u_mono ? 1.0 : 0.0, 1.0, u_mono);
  r.add("interface_width", interface::interface_width(tw.state.phi, grid), kink_width(p.epsilon),
        std::nullopt);
  if (!flux_rows) return;
  for (const std::size_t off : s.stencil_offsets) {
    const double jump = interface::flux_jump(tw.state.u, tw.state.phi, grid, 0.0, off);
    const double v = interface::stefan_velocity(jump);
    r.add("stefan_velocity_offset_" + std::to_string(off), v, tw.velocity,
          std::abs(relative_error(v, tw.velocity)) <= 0.10);
    r.add("latent_stefan_velocity_offset_" + std::to_string(off),
          interface::stefan_velocity(jump, p.latent_heat), tw.velocity, std::nullopt);
  }
}

inline void run_traveling(const Scenario& s, Report& r) {
  const Grid1D grid = Grid1D::symmetric(s.length, s.h);
  const auto tw = traveling_wave(s, s.params, grid);
  write_state_file(s.output_dir / "profile.csv", grid, tw.state);
  add_traveling_rows(s, s.params, grid, tw, r, true);
  r.diagnostics.push_back("sweeps " + std::to_string(tw.iterations) + ", V " + tag(tw.velocity));
}

inline void run_coupled_relax(const Scenario& s, Report& r) {
  const ModelParams& p = s.params;
  const Grid1D frame = Grid1D::symmetric(s.length, s.h);
  const auto tw = traveling_wave(s, p, frame);
  write_state_file(s.output_dir / "profile.csv", frame, tw.state);
  r.add("residual", tw.residual, s.tol, tw.converged);

  const double v_est = std::max(kinetic_estimate(p), 0.0);
  const double span = 2.0 * s.length + 1.5 * v_est * s.ctrl.t_end;
  const Grid1D lab(static_cast<std::size_t>(std::llround(span / s.h)) + 1, s.h, -s.length);
  const FarField far = steady_far_field(p);
  CoupledInit init;
  init.temperature = CoupledInit::Temperature::exponential;
  init.u_solid = far.u_solid;
  init.u_liquid = far.u_liquid;
  init.velocity = v_est;
  init.equilibrium_phases = true;
  StepControl ctrl = s.ctrl;
  if (ctrl.dt == 0.0) ctrl.dt = 0.9 * coupled_stability_limit(s.h, p);
  ctrl.snapshot_every = auto_snapshot(s, ctrl.dt, 1.0);
  const auto run = run_coupled(make_coupled_initial(lab, p, init), lab, p, ctrl, Boundary::dirichlet);
  write_front_series(s.output_dir / "series.csv", run.observations);
  write_state_file(s.output_dir / "final_state.csv", lab, run.final_state);

  const auto late = late_velocity(run.observations);
  r.add("lab_velocity", late.slope, tw.velocity,
        tw.converged && std::abs(relative_error(late.slope, tw.velocity)) <= 0.02);
  r.add("velocity_variance_ratio", late.variance_ratio, 0.0, late.variance_ratio < 0.01);
  r.add("velocity_vs_sharp", tw.velocity, sharp::sharp_velocity(p.delta, p.beta), std::nullopt);
  r.diagnostics.push_back("lab front at t=" + tag(run.final_state.time) + ": x=" +
                          tag(run.observations.back().position));
}

inline void run_lambda_sweep(const Scenario& s, Report& r) {
  std::vector<double> lam_col, v_col, vs_col, disc_col, w_col, res_col, conv_col;
  std::optional<double> prev_width, prev_disc;
  for (const double lam : s.lambdas) {
    ModelParams p = s.params;
    p.lambda = lam;
    validate_params(p);
    const double v_est = kinetic_estimate(p);
    const double half = s.length > 0.0 ? s.length : std::max(60.0, v_est > 0.0 ? 12.0 / v_est : 60.0);
    const Grid1D grid = Grid1D::symmetric(half, s.h);
    const auto tw = traveling_wave(s, p, grid);
    write_state_file(s.output_dir / ("profile_lambda_" + tag(lam) + ".csv"), grid, tw.state);
    const std::string suffix = "_lambda_" + tag(lam);
    r.add("residual" + suffix, tw.residual, s.tol, tw.converged);
    const double vs = sharp::sharp_velocity(p.delta, p.beta);
    const double disc = std::abs(tw.velocity - vs) / std::abs(vs);
    double width = std::nan("");
    if (tw.converged) width = interface::interface_width(tw.state.phi, grid);
    r.add("velocity" + suffix, tw.velocity, vs, std::nullopt);
    if (prev_width) r.add("width" + suffix, width, *prev_width, width < *prev_width);
    else r.add("width" + suffix, width, kink_width(p.epsilon), std::nullopt);
    if (prev_disc) r.add("discrepancy" + suffix, disc, *prev_disc, disc < *prev_disc);
    else r.add("discrepancy" + suffix, disc, 0.0, std::nullopt);
    prev_width = width;
    prev_disc = disc;
    lam_col.push_back(lam);
    v_col.push_back(tw.velocity);
    vs_col.push_back(vs);
    disc_col.push_back(disc);
    w_col.push_back(width);
    res_col.push_back(tw.residual);
    conv_col.push_back(tw.converged ? 1.0 : 0.0);
  }
  write_csv_file(s.output_dir / "sweep.csv",
                 "lambda,velocity,sharp_velocity,rel_discrepancy,width,residual,converged",
                 {lam_col, v_col, vs_col, disc_col, w_col, res_col, conv_col});
}

inline void run_sqrt_t(const Scenario& s, Report& r) {
  const ModelParams& p = s.params;
  const Grid1D grid = Grid1D::symmetric(s.length, s.h);
  CoupledInit init;
  init.u_solid = s.u_solid;
  init.u_liquid = s.u_liquid;
  const FieldState start = make_coupled_initial(grid, p, init);
  StepControl ctrl = s.ctrl;
  if (ctrl.dt == 0.0) ctrl.dt = 0.9 * coupled_stability_limit(s.h, p);
  ctrl.snapshot_every = auto_snapshot(s, ctrl.dt, 1.0);
  const auto run = run_coupled(start, grid, p, ctrl, Boundary::no_flux);
  write_front_series(s.output_dir / "series.csv", run.observations);
  write_state_file(s.output_dir / "final_state.csv", grid, run.final_state);

  const double x0 = run.observations.front().position;
  std::vector<double> t, d;
  for (const auto& o : run.observations) {
    if (o.time <= 0.0) continue;
    t.push_back(o.time);
    d.push_back(std::abs(o.position - x0));
  }
  const double t_final = run.final_state.time;
  interface::FitWindow window;
  window.t_min = s.fit_from > 0.0 ? s.fit_from : t_final / 10.0;
  window.t_max = t_final;
  const auto fit = interface::fit_power_law(t, d, window);
  r.add("front_exponent", fit.exponent, 0.5, fit.exponent >= 0.45 && fit.exponent <= 0.55);
  r.add("run_duration", t_final, 100.0, t_final >= 100.0);
  const double drift = std::abs(heat_content(run.final_state, grid, p.latent_heat) -
                                heat_content(start, grid, p.latent_heat)) /
                       t_final;
  r.add("heat_drift_per_time", drift, 0.0, drift <= 1e-10);
  r.diagnostics.push_back("fit window [" + tag(*window.t_min) + ", " + tag(t_final) + "], " +
                          std::to_string(fit.samples) + " samples");
}

}  // namespace detail

/// Runs the named pipeline, writes its CSVs into output_dir and compares
/// measured observables to oracle values. Numerical blow-up is reported in
/// the Report, configuration problems propagate as exceptions.
inline Report run_scenario(const Scenario& s) {
  if (!is_scenario_name(s.name)) throw ConfigError("unknown scenario '" + s.name + "'");
  validate_params(s.params);
  ensure_writable(s.output_dir);
  Report r;
  r.scenario = s.name;
  try {
    if (s.name == "radial-shrinkage") detail::run_radial(s, r);
    else if (s.name == "traveling-wave") detail::run_traveling(s, r);
    else if (s.name == "coupled-relax") detail::run_coupled_relax(s, r);
    else if (s.name == "lambda-sweep") detail::run_lambda_sweep(s, r);
    else detail::run_sqrt_t(s, r);
  } catch (const BlowUpError& e) {
    r.status = Report::Status::blow_up;
    r.diagnostics.push_back(e.what());
  } catch (const InterfaceError& e) {
    r.status = Report::Status::error;
    r.diagnostics.push_back(e.what());
  }
  emit_report(r, s.output_dir / "report.csv");
  return r;
}

}  // namespace pfstefan
