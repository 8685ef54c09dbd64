#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "hypergeometric.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"
#include "radial_solver.hpp"
#include "tortoise_map.hpp"

namespace tortoise {

// Asymptotic: u = A sin(k r* - l pi/2 + delta) with (u, u') at the point.
// Uniform: u sqrt(r*') matched to Riccati-Bessel functions of k r*, which
// also absorbs the centrifugal term and the slowly varying amplitude.
enum class MatchModel { Asymptotic, Uniform };

// Unit keeps log terms of r* as ln r; TwoKR measures them against ln(2kr),
// the usual Coulomb convention.
enum class LogReference { Unit, TwoKR };

struct ExtractOptions {
  MatchModel model = MatchModel::Uniform;
  bool tail_correction = true;  // add the phase still to be picked up beyond r_match
  double max_drift = 1e-2;
  LogReference log_reference = LogReference::Unit;
};

struct PhaseShiftResult {
  double delta = 0.0;  // in (-pi/2, pi/2]
  double amplitude = 0.0;
  double residual = 0.0;
  double drift = 0.0;
  int branch = 0;  // unreduced delta = delta + branch * pi
  double delta_second = 0.0;  // same quantity read at 1.2 r_match, unreduced
};

inline double asymptotic_wave(const TortoiseMap& map, int l, double k, double delta, double amplitude, double r) {
  return amplitude * std::sin(k * eval_map(map, r) - l * std::numbers::pi / 2.0 + delta);
}

namespace detail {

struct Riccati {
  double j, n, dj, dn;  // jhat, nhat and their x-derivatives
};

// Upward recurrence; fine for x well past l, which is where we match.
inline Riccati riccati_bessel(int l, double x) {
  double s = std::sin(x), c = std::cos(x);
  double j0 = s, n0 = -c;
  if (l == 0) return {j0, n0, c, s};
  double j1 = s / x - c, n1 = -c / x - s;
  for (int m = 1; m < l; ++m) {
    double j2 = (2.0 * m + 1.0) / x * j1 - j0;
    double n2 = (2.0 * m + 1.0) / x * n1 - n0;
    j0 = j1;
    n0 = n1;
    j1 = j2;
    n1 = n2;
  }
  return {j1, n1, j0 - l / x * j1, n0 - l / x * n1};
}

inline double reduce_half_open(double d, int& branch) {
  const double pi = std::numbers::pi;
  double b = std::ceil((d - pi / 2.0) / pi);
  double red = d - b * pi;
  if (red <= -pi / 2.0) {
    red += pi;
    b -= 1.0;
  }
  branch = static_cast<int>(b);
  return red;
}

inline double mod_pi_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

// Phase still to be accumulated beyond r by the order-N closed-form map:
// -k sigma_{N+1} int_r^inf x^{N+1} 2F1(1, N+1/2; N+2; x), x = V/k^2.
inline bool has_tail(const TortoiseMap& map) {
  if (map.kind != MapKind::TermList || !map.potential) return false;
  if (map.cls.regime != Regime::Vanishing || map.cls.n_index.marginal) return false;
  const auto* spec = std::get_if<PotentialSpec>(&*map.potential);
  return spec && !spec->empty();
}

inline double tail_phase(const TortoiseMap& map, double r) {
  if (!has_tail(map)) return 0.0;
  const auto* spec = std::get_if<PotentialSpec>(&*map.potential);
  const int N = map.order;
  const double k = map.k, k2 = k * k, s = sigma(N + 1);
  auto g = [&](double x) {
    double z = evaluate(*spec, x) / k2;
    if (std::abs(z) <= 0.9) return s * std::pow(z, N + 1) * hyp2f1_series(1.0, N + 0.5, N + 2.0, z);
    return map_derivative(map, x) - std::sqrt(1.0 - z);
  };
  return -k * quad::integrate_to_infinity(g, r);
}

struct LocalFit {
  double delta, amplitude;
};

// Phase variable at r and its first two r-derivatives. With the tail on, the
// amplitude follows the exact local wavenumber sqrt(1 - V/k^2) rather than the
// truncated map, and the phase carries -T(r).
struct Phase {
  double x, d1, d2;
};

inline Phase phase_variable(const TortoiseMap& map, double k, double r, bool tail) {
  if (tail && has_tail(map)) {
    const auto& spec = std::get<PotentialSpec>(*map.potential);
    double z = evaluate(spec, r) / (k * k);
    double p = std::sqrt(1.0 - z);
    return {k * eval_map(map, r) - tail_phase(map, r), p, -derivative(spec, r) / (2.0 * k * k * p)};
  }
  return {k * eval_map(map, r), map_derivative(map, r), map_second_derivative(map, r)};
}

inline LocalFit local_fit(const Phase& ph, int l, double k, double u, double du, MatchModel model) {
  const double x = ph.x, d1 = ph.d1;
  if (model == MatchModel::Asymptotic) {
    double theta = std::atan2(u, du / (k * d1));
    return {theta - x + l * std::numbers::pi / 2.0, std::hypot(u, du / (k * d1))};
  }
  const double sq = std::sqrt(d1);
  const double w = u * sq;
  const double dw = (du * sq + u * ph.d2 / (2.0 * sq)) / d1;
  Riccati f = riccati_bessel(l, x);
  double wj = f.j * dw - k * f.dj * w;
  double wn = f.n * dw - k * f.dn * w;
  return {std::atan2(-wj, -wn), std::hypot(wj, wn) / k};
}

inline double model_wave(const Phase& ph, int l, double delta, double amp, MatchModel model) {
  if (model == MatchModel::Asymptotic) return amp * std::sin(ph.x - l * std::numbers::pi / 2.0 + delta);
  Riccati f = riccati_bessel(l, ph.x);
  return amp * (f.j * std::cos(delta) - f.n * std::sin(delta)) / std::sqrt(ph.d1);
}

inline std::size_t nearest_index(const std::vector<double>& grid, double r) {
  auto it = std::lower_bound(grid.begin(), grid.end(), r);
  if (it == grid.end()) return grid.size() - 1;
  std::size_t i = static_cast<std::size_t>(it - grid.begin());
  if (i > 0 && std::abs(grid[i - 1] - r) < std::abs(grid[i] - r)) --i;
  return i;
}

}  // namespace detail

inline PhaseShiftResult extract_phase(const RadialSolution& sol, const TortoiseMap& map, int l, double k, double r_match,
                                      const ExtractOptions& opt = {}) {
  if (sol.grid.size() < 2) fail(ErrorKind::InvalidArgument, "solution grid too short");
  const double r1 = r_match, r2 = 1.2 * r_match;
  const double lo = sol.grid.front(), hi = sol.grid.back();
  if (r1 < lo || r2 > hi * (1.0 + 1e-12))
    fail(ErrorKind::OutOfDomain, "matching radii must lie inside the solution grid");
  if (!(r1 > map.validity_floor)) fail(ErrorKind::OutOfDomain, "matching radius below the map validity floor");

  const std::size_t i1 = detail::nearest_index(sol.grid, r1), i2 = detail::nearest_index(sol.grid, r2);

  double umax = 0.0;
  for (std::size_t i = 0; i < sol.u.size(); ++i) umax = std::max(umax, std::hypot(sol.u[i], sol.du[i] / k));
  if (std::hypot(sol.u[i1], sol.du[i1] / k) < 1e-12 * umax)
    fail(ErrorKind::DegenerateMatch, "solution vanishes at the matching point; shift r_match");

  double log_shift = 0.0;
  if (opt.log_reference == LogReference::TwoKR) log_shift = k * log_coefficient(map) * std::log(2.0 * k);

  const bool tail = opt.tail_correction;
  auto phase_at = [&](std::size_t i, double& amp) {
    detail::Phase ph = detail::phase_variable(map, k, sol.grid[i], tail);
    detail::LocalFit f = detail::local_fit(ph, l, k, sol.u[i], sol.du[i], opt.model);
    amp = f.amplitude;
    return f.delta;
  };

  double a1 = 0, a2 = 0;
  const double d1 = phase_at(i1, a1);
  double d2 = phase_at(i2, a2);
  // Keep the second reading on the same sheet as the first.
  d2 -= std::round((d2 - d1) / std::numbers::pi) * std::numbers::pi;

  PhaseShiftResult res;
  res.amplitude = a1;
  res.drift = detail::mod_pi_distance(d1, d2);
  res.delta_second = d2 - log_shift;

  const std::size_t n = i2 >= i1 ? i2 - i1 + 1 : 1;
  const std::size_t stride = std::max<std::size_t>(1, n / 64);
  double worst = 0.0;
  for (std::size_t i = i1; i <= i2; i += stride) {
    double fit = detail::model_wave(detail::phase_variable(map, k, sol.grid[i], tail), l, d1, a1, opt.model);
    worst = std::max(worst, std::abs(sol.u[i] - fit) / a1);
  }
  res.residual = worst;

  res.delta = detail::reduce_half_open(d1 - log_shift, res.branch);
  if (res.drift > opt.max_drift)
    fail(ErrorKind::NotAsymptotic, "phase drifts by " + std::to_string(res.drift) + " between r_match and 1.2 r_match; enlarge r_match");
  return res;
}

struct PhaseShiftSettings {
  ExtractOptions extract{};
  int homotopy_steps = 8;
  double step_hint = 0.1;
  double tolerance = 1e-12;
};

// delta_l for a power-sum potential, branch fixed by following the coupling
// from zero in homotopy_steps increments.
inline PhaseShiftResult phase_shift(const PotentialSpec& spec, double k, int l, double r_match,
                                    const PhaseShiftSettings& set = {}) {
  if (!(r_match > 0.0)) fail(ErrorKind::InvalidArgument, "r_match must be positive");
  const int steps = std::max(1, set.homotopy_steps);
  double prev = 0.0;
  PhaseShiftResult last;
  for (int j = spec.empty() ? steps : 1; j <= steps; ++j) {
    PotentialSpec s = spec.scaled(static_cast<double>(j) / steps);
    TortoiseMap map = build_map(s, k);
    RadialProblem<PotentialSpec> pb;
    pb.potential = s;
    pb.k = k;
    pb.l = l;
    pb.r_stop = 1.2 * r_match;
    pb.stops = {r_match};
    pb.step_hint = set.step_hint;
    pb.tolerance = set.tolerance;
    RadialSolution sol = integrate(pb);
    last = extract_phase(sol, map, l, k, r_match, set.extract);
    double full = last.delta + last.branch * std::numbers::pi;
    full -= std::round((full - prev) / std::numbers::pi) * std::numbers::pi;
    prev = full;
  }
  last.delta = detail::reduce_half_open(prev, last.branch);
  return last;
}

}  // namespace tortoise
