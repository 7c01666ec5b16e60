#pragma once

// Parameter set, grid description and field-state container shared by the
// solvers, plus the CSV state dump.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace pfstefan {

/// Rejected parameters, grids or preconditions.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field went non-finite during time stepping.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(std::size_t index, double time)
      : std::runtime_error("numerical blow-up: non-finite value at index " +
                           std::to_string(index) + ", time " +
                           std::to_string(time)),
        index_(index),
        time_(time) {}

  std::size_t index() const noexcept { return index_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t index_;
  double time_;
};

/**
 * Scalar model constants.
 *
 * epsilon  interface-width parameter (multiplies the phase-field Laplacian
 *          as epsilon^2; 1 reproduces the unscaled coupled equations)
 * lambda   temperature coupling in the order-parameter equation
 * alpha    kinetic coefficient of the sharp-interface relation
 * beta     kinetic undercooling coefficient, u_i = -beta V
 * delta    far-field undercooling, u(+inf) = -delta
 * latent_heat  coupling of phi_t into the heat equation
 * dim      spatial dimension (1, 2 or 3)
 */
struct ModelParams {
  double epsilon{1.0};
  double lambda{0.0};
  double alpha{1.0};
  double beta{1.0};
  double delta{0.0};
  double latent_heat{0.5};
  int dim{1};

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Returns p unchanged if every invariant holds, throws ParameterError naming
/// the first violation otherwise.
inline ModelParams validate_params(const ModelParams& p) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(p.epsilon) || p.epsilon <= 0.0)
    throw ParameterError("epsilon must be positive");
  if (!finite(p.lambda) || p.lambda < 0.0)
    throw ParameterError("lambda must be non-negative");
  if (!finite(p.alpha) || p.alpha <= 0.0)
    throw ParameterError("alpha must be positive");
  if (!finite(p.beta) || p.beta <= 0.0)
    throw ParameterError("beta must be positive");
  if (!finite(p.delta)) throw ParameterError("delta must be finite");
  if (!finite(p.latent_heat) || p.latent_heat <= 0.0)
    throw ParameterError("latent_heat must be positive");
  if (p.dim < 1 || p.dim > 3) throw ParameterError("dim out of range");
  return p;
}

enum class Geometry { cartesian, radial };

/// Uniform 1D grid; point i sits at origin + i*h.
class Grid1D {
 public:
  Grid1D(std::size_t n, double h, double origin = 0.0,
         Geometry geometry = Geometry::cartesian)
      : n_(n), h_(h), origin_(origin), geometry_(geometry) {
    if (n < 5) throw ParameterError("grid needs at least 5 points");
    if (!(h > 0.0) || !std::isfinite(h))
      throw ParameterError("grid spacing must be positive");
    if (!std::isfinite(origin)) throw ParameterError("grid origin must be finite");
    if (geometry == Geometry::radial && origin < 0.0)
      throw ParameterError("radial grid requires origin >= 0");
  }

  /// Grid with a node at every multiple of h covering [-half_length, half_length].
  static Grid1D symmetric(double half_length, double h) {
    if (!(half_length > 0.0) || !(h > 0.0))
      throw ParameterError("symmetric grid needs positive length and spacing");
    const auto half = static_cast<std::size_t>(std::llround(half_length / h));
    return Grid1D(2 * half + 1, h, -static_cast<double>(half) * h);
  }

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }
  double origin() const noexcept { return origin_; }
  Geometry geometry() const noexcept { return geometry_; }
  double x(std::size_t i) const noexcept { return origin_ + static_cast<double>(i) * h_; }
  double front() const noexcept { return origin_; }
  double back() const noexcept { return x(n_ - 1); }

  std::vector<double> coordinates() const {
    std::vector<double> xs(n_);
    for (std::size_t i = 0; i < n_; ++i) xs[i] = x(i);
    return xs;
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  std::size_t n_;
  double h_;
  double origin_;
  Geometry geometry_;
};

/// Paired order-parameter and temperature samples at one instant.
struct FieldState {
  std::vector<double> phi;
  std::vector<double> u;
  double time{0.0};

  FieldState() = default;
  FieldState(std::size_t n, double phi0 = 0.0, double u0 = 0.0)
      : phi(n, phi0), u(n, u0) {}
  FieldState(std::vector<double> phi_, std::vector<double> u_, double t = 0.0)
      : phi(std::move(phi_)), u(std::move(u_)), time(t) {}

  std::size_t size() const noexcept { return phi.size(); }

  friend bool operator==(const FieldState&, const FieldState&) = default;
};

/// Throws ParameterError if the state does not match the grid.
inline void check_state(const FieldState& s, const Grid1D& g) {
  if (s.phi.size() != g.size() || s.u.size() != g.size())
    throw ParameterError("field length " + std::to_string(s.phi.size()) + "/" +
                         std::to_string(s.u.size()) + " does not match grid size " +
                         std::to_string(g.size()));
}

/// Throws BlowUpError at the first non-finite entry of phi or u.
inline void check_finite(const FieldState& s) {
  for (std::size_t i = 0; i < s.phi.size(); ++i)
    if (!std::isfinite(s.phi[i]) || !std::isfinite(s.u[i])) throw BlowUpError(i, s.time);
}

struct InterfaceObservation {
  double time{0.0};
  double position{0.0};
  double velocity{0.0};
  double curvature{0.0};
  double flux_jump{0.0};
  double u_at_interface{0.0};
};

namespace detail {

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Writes `x,phi,u` rows followed by `# time=<t>`, 17 significant digits.
inline void write_state_csv(std::ostream& os, const Grid1D& g, const FieldState& s) {
  check_state(s, g);
  os << "x,phi,u\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    os << detail::format_g17(g.x(i)) << ',' << detail::format_g17(s.phi[i]) << ','
       << detail::format_g17(s.u[i]) << '\n';
  os << "# time=" << detail::format_g17(s.time) << '\n';
}

namespace detail {

inline double parse_csv_double(const std::string& text, std::size_t lineno) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ParameterError("state csv: bad number '" + text + "' at line " + std::to_string(lineno));
  return v;
}

}  // namespace detail

struct StateDump {
  std::vector<double> x;
  FieldState state;
};

/// Parses the format produced by write_state_csv.
inline StateDump read_state_csv(std::istream& is) {
  StateDump out;
  std::string line;
  if (!std::getline(is, line) || line != "x,phi,u")
    throw ParameterError("state csv: missing header 'x,phi,u'");
  bool have_time = false;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# time=", 0) == 0) {
      out.state.time = detail::parse_csv_double(line.substr(7), lineno);
      have_time = true;
      continue;
    }
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
      throw ParameterError("state csv: malformed row at line " + std::to_string(lineno));
    out.x.push_back(detail::parse_csv_double(a, lineno));
    out.state.phi.push_back(detail::parse_csv_double(b, lineno));
    out.state.u.push_back(detail::parse_csv_double(c, lineno));
  }
  if (!have_time) throw ParameterError("state csv: missing '# time=' trailer");
  return out;
}

}  // namespace pfstefan
