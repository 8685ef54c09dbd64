#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <map>
#include <numbers>
#include <vector>

#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "errors.hpp"
#include "potentials.hpp"
#include "tortoise_map.hpp"

namespace tortoise {

// Anything with a pointwise value and a power-law description near the origin
// can be fed to the solver. Piecewise potentials may also expose
// breakpoints(p) so the integrator lands on the jumps.
template <class P>
concept RadialPotential = requires(const P& p, double r) {
  { evaluate(p, r) } -> std::convertible_to<double>;
  { origin_terms(p) } -> std::convertible_to<std::vector<PowerTerm>>;
};

template <class P>
std::vector<double> potential_breakpoints(const P& p) {
  if constexpr (requires { breakpoints(p); })
    return breakpoints(p);
  else
    return {};
}

template <RadialPotential P = PotentialSpec>
struct RadialProblem {
  P potential{};
  double k = 1.0;
  int l = 0;
  double r_start = 0.0;  // 0 picks the default origin radius
  double r_stop = 100.0;
  double step_hint = 0.1;
  double tolerance = 1e-12;  // local error per unit length, relative to the envelope
  std::vector<double> stops;  // radii the grid must contain
};

struct RadialSolution {
  std::vector<double> grid;
  std::vector<double> u;
  std::vector<double> du;
  double local_error_estimate = 0.0;
  int rescale_count = 0;
};

namespace detail {

// u = r^{l+1} w with w = 1 + L^{-1}[(V - k^2) w] iterated, where
// L = d^2/dr^2 + (2l+2)/r d/dr sends r^{t+2} to (t+2)(t+2l+3) r^t.
inline std::array<double, 2> frobenius_start(const std::vector<PowerTerm>& vterms, double k, int l, double r0) {
  std::map<double, double> q{{0.0, -k * k}};
  for (const auto& t : vterms) {
    if (t.exponent <= -2.0) fail(ErrorKind::InvalidPotential, "potential too singular at the origin for a regular solution");
    q[t.exponent] += t.coefficient;
  }
  std::map<double, double> total{{0.0, 1.0}}, cur = total;
  for (int it = 0; it < 40 && !cur.empty(); ++it) {
    std::map<double, double> next;
    for (const auto& [e, c] : cur)
      for (const auto& [p, a] : q) {
        if (a == 0.0) continue;
        double t = e + p;
        double coef = c * a / ((t + 2.0) * (t + 2.0 * l + 3.0));
        if (std::abs(coef * std::pow(r0, t + 2.0)) > 1e-22) next[t + 2.0] += coef;
      }
    for (const auto& [e, c] : next) total[e] += c;
    cur = std::move(next);
  }
  double w = 0.0, dw = 0.0;
  for (const auto& [e, c] : total) {
    w += c * std::pow(r0, e);
    dw += c * (e + l + 1.0) * std::pow(r0, e);
  }
  double rl = std::pow(r0, l);
  return {rl * r0 * w, rl * dw};
}

template <class P>
double default_r_start(const RadialProblem<P>& pb) {
  double r0 = std::min(1e-3, 0.01 / pb.k);
  if (pb.l >= 1) {
    double cent = pb.l * (pb.l + 1.0);
    while (r0 > 1e-12 && cent / (r0 * r0) < 100.0 * std::abs(evaluate(pb.potential, r0))) r0 *= 0.5;
  }
  return r0;
}

template <class P>
void check_problem(const RadialProblem<P>& pb, double r0) {
  if (!(pb.k > 0.0) || !std::isfinite(pb.k)) fail(ErrorKind::InvalidArgument, "k must be positive");
  if (pb.l < 0) fail(ErrorKind::InvalidArgument, "l must be nonnegative");
  if (!(r0 > 0.0) || !(r0 < pb.r_stop)) fail(ErrorKind::InvalidArgument, "need 0 < r_start < r_stop");
  if (!(pb.step_hint > 0.0)) fail(ErrorKind::InvalidArgument, "step_hint must be positive");
  if (!(pb.tolerance > 0.0)) fail(ErrorKind::InvalidArgument, "tolerance must be positive");
}

}  // namespace detail

template <class P>
RadialSolution integrate_from(const RadialProblem<P>& pb, double u0, double du0) {
  using State = std::array<double, 2>;
  const double r0 = pb.r_start > 0.0 ? pb.r_start : detail::default_r_start(pb);
  detail::check_problem(pb, r0);
  if (u0 == 0.0 && du0 == 0.0) fail(ErrorKind::InvalidArgument, "initial data are both zero");

  const double k = pb.k, k2 = k * k, cent = pb.l * (pb.l + 1.0);
  const double hmax = std::min(pb.step_hint, 2.0 * std::numbers::pi / (10.0 * k));

  std::vector<double> breaks;
  for (double b : potential_breakpoints(pb.potential))
    if (b > r0 && b < pb.r_stop) breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());

  std::vector<double> targets = breaks;
  for (double s : pb.stops)
    if (s > r0 && s < pb.r_stop) targets.push_back(s);
  targets.push_back(pb.r_stop);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  // Right edge of the smooth piece being integrated: evaluate just inside it.
  double seg_hi = breaks.empty() ? INFINITY : breaks.front();
  std::size_t next_break = 0;
  auto sys = [&](const State& x, State& dx, double r) {
    double re = r >= seg_hi ? std::nextafter(seg_hi, 0.0) : r;
    dx[0] = x[1];
    dx[1] = (cent / (re * re) + evaluate(pb.potential, re) - k2) * x[0];
  };

  boost::numeric::odeint::runge_kutta_dopri5<State> stepper;
  RadialSolution sol;
  State x{u0, du0}, dxdt, xo, dxo, xerr;
  double r = r0;
  sys(x, dxdt, r);
  sol.grid.push_back(r);
  sol.u.push_back(x[0]);
  sol.du.push_back(x[1]);

  const double big = std::ldexp(1.0, 512), shrink = std::ldexp(1.0, -512);
  double h = std::min(hmax, 0.1 * r0);
  std::size_t ti = 0;
  while (ti < targets.size()) {
    const double target = targets[ti];
    bool land = false;
    double step = h;
    if (r + step >= target || target - (r + step) < 1e-9 * step) {
      step = target - r;
      land = true;
    }
    stepper.do_step(sys, x, dxdt, r, xo, dxo, step, xerr);
    double env = std::max(std::hypot(x[0], x[1] / k), 1e-300);
    double err = std::max(std::abs(xerr[0]), std::abs(xerr[1]) / k) / env / step;
    if (!std::isfinite(err)) err = 1e300;
    if (err <= pb.tolerance) {
      r = land ? target : r + step;
      x = xo;
      dxdt = dxo;
      sol.local_error_estimate += err * step;
      if (land) {
        ++ti;
        if (next_break < breaks.size() && r == breaks[next_break]) {
          ++next_break;
          seg_hi = next_break < breaks.size() ? breaks[next_break] : INFINITY;
        }
        sys(x, dxdt, r);
      }
      if (std::abs(x[0]) > big || std::abs(x[1]) > big) {
        x[0] *= shrink;
        x[1] *= shrink;
        dxdt[0] *= shrink;
        dxdt[1] *= shrink;
        for (auto& v : sol.u) v *= shrink;
        for (auto& v : sol.du) v *= shrink;
        ++sol.rescale_count;
      }
      sol.grid.push_back(r);
      sol.u.push_back(x[0]);
      sol.du.push_back(x[1]);
      // A step shortened to land on a target says little about the next one.
      if (!(land && step < h)) {
        double grow = err > 0.0 ? 0.9 * std::pow(pb.tolerance / err, 0.25) : 5.0;
        h = std::min(hmax, step * std::clamp(grow, 0.2, 5.0));
      }
    } else {
      h = step * std::clamp(0.9 * std::pow(pb.tolerance / err, 0.25), 0.1, 0.9);
      if (h < 1e-14 * std::max(r, 1e-300))
        fail(ErrorKind::IntegrationFailure, "step size underflow at r = " + std::to_string(r));
    }
  }
  return sol;
}

template <class P>
RadialSolution integrate(const RadialProblem<P>& pb) {
  const double r0 = pb.r_start > 0.0 ? pb.r_start : detail::default_r_start(pb);
  detail::check_problem(pb, r0);
  auto s = detail::frobenius_start(origin_terms(pb.potential), pb.k, pb.l, r0);
  RadialProblem<P> q = pb;
  q.r_start = r0;
  return integrate_from(q, s[0], s[1]);
}

// Defect of w = exp(-k r*) in u'' + (k^2 - l(l+1)/r^2 - V) u = 0, relative to |V|.
template <class P>
double asymptotic_residual(const P& potential, double k, int l, const TortoiseMap& map, double r) {
  PotentialClass c = classify(potential);
  if (c.regime != Regime::Rising) fail(ErrorKind::NotRising, "asymptotic_residual needs a rising potential");
  double d1 = map_derivative(map, r), d2 = map_second_derivative(map, r);
  double V = evaluate(potential, r);
  double num = k * k * d1 * d1 - k * d2 + k * k - l * (l + 1.0) / (r * r) - V;
  return std::abs(num) / std::abs(V);
}

}  // namespace tortoise
