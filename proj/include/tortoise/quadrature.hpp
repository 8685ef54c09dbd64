#pragma once

// Thin wrappers over Boost.Math quadrature. Long intervals are cut into
// geometric panels so a single Gauss-Kronrod rule never has to span decades.

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "errors.hpp"

namespace tortoise::quad {

template <class F>
double panel(F&& f, double a, double b, double tol) {
  double err = 0.0;
  double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, tol, &err);
  if (!std::isfinite(v)) fail(ErrorKind::IntegrationFailure, "quadrature produced a non-finite value");
  return v;
}

// Integral of f over [a, b], any order of a and b.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-14) {
  if (a == b) return 0.0;
  if (b < a) return -integrate(f, b, a, tol);
  double total = 0.0;
  double lo = a;
  while (lo < b) {
    double hi = lo > 0.0 ? std::min(b, 2.0 * lo) : b;
    if (b - hi < 1e-12 * b) hi = b;
    total += panel(f, lo, hi, tol);
    lo = hi;
  }
  return total;
}

// Integral of f over [a, inf) with a > 0, via r = a/s on s in (0, 1].
template <class F>
double integrate_to_infinity(F&& f, double a, double tol = 1e-13) {
  if (!(a > 0.0)) fail(ErrorKind::InvalidArgument, "tail integral needs a positive lower limit");
  auto g = [&](double s) {
    if (s < 1e-200) return 0.0;
    double r = a / s;
    double v = f(r) * a / (s * s);
    return std::isfinite(v) ? v : 0.0;
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0.0;
  double v = ts.integrate(g, 0.0, 1.0, tol, &err);
  if (!std::isfinite(v)) fail(ErrorKind::IntegrationFailure, "tail quadrature produced a non-finite value");
  return v;
}

}  // namespace tortoise::quad
