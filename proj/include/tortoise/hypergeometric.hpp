#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"

namespace tortoise {

// Gamma(eta - 1/2) / (2 sqrt(pi) eta!), by recurrence from sigma_0 = -1.
inline double sigma(int eta) {
  if (eta < 0) fail(ErrorKind::InvalidArgument, "sigma needs eta >= 0");
  double s = -1.0;
  for (int n = 0; n < eta; ++n) s *= (n - 0.5) / (n + 1.0);
  return s;
}

// Plain power series for 2F1(a, b; c; z). Only |z| <= 0.9 is accepted; no
// analytic continuation.
inline double hyp2f1_series(double a, double b, double c, double z) {
  if (!(std::abs(z) <= 0.9)) fail(ErrorKind::HypergeometricDomain, "2F1 series needs |z| <= 0.9, got " + std::to_string(z));
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < 10000; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
  }
  return sum;
}

}  // namespace tortoise
