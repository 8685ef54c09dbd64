#pragma once

// Newton duality between V(r) = xi r^-a + sum mu_n r^-b_n and
// U(rho) = zeta rho^A + sum lambda_n rho^B_n under r = rho^m, m = (A+2)/2.

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "potentials.hpp"

namespace tortoise {

inline double dual_exponent(double a) {
  if (!(a > 0.0 && a < 2.0)) fail(ErrorKind::OutOfDualityDomain, "duality needs 0 < a < 2, got a = " + std::to_string(a));
  return 2.0 * a / (2.0 - a);
}

inline double inverse_dual_exponent(double A) {
  if (!(A > 0.0) || !std::isfinite(A)) fail(ErrorKind::OutOfDualityDomain, "duality needs A > 0, got A = " + std::to_string(A));
  return 2.0 * A / (2.0 + A);
}

// b_n = a is allowed and gives B_n = 0.
inline double dual_subleading(double a, double b) {
  if (!(a > 0.0 && a < 2.0)) fail(ErrorKind::OutOfDualityDomain, "duality needs 0 < a < 2, got a = " + std::to_string(a));
  if (!(b >= a)) fail(ErrorKind::OutOfDualityDomain, "subleading exponent must not decay slower than the leading one");
  return (2.0 * a - 2.0 * b) / (2.0 - a);
}

struct DualityMap {
  double a = 0.0;
  double A = 0.0;
  double m = 1.0;  // r = rho^m
  double coupling_xi = 0.0;
  double coupling_zeta = 0.0;
  double energy = 0.0;        // E = k^2 of the V problem (signed)
  double kappa_squared = 0.0;  // signed, = -m^2 xi
  double kappa = 0.0;         // sqrt|kappa_squared|
  int kappa_sign = 0;

  // Angular momentum of the dual problem, L + 1/2 = m (l + 1/2).
  double dual_l(int l) const { return m * (l + 0.5) - 0.5; }
};

struct DualResult {
  PotentialSpec potential;
  DualityMap map;
};

// energy is the signed E of the V problem (k^2 for scattering, -kappa^2 for
// bound states).
inline DualResult dual_potential_at_energy(const PotentialSpec& spec, double energy) {
  auto lead = leading_behavior(spec);
  if (!lead || !(lead->exponent < 0.0)) fail(ErrorKind::OutOfDualityDomain, "duality needs a vanishing potential");
  DualityMap d;
  d.a = -lead->exponent;
  d.A = dual_exponent(d.a);
  d.m = (d.A + 2.0) / 2.0;
  const double m2 = d.m * d.m;
  d.coupling_xi = lead->coefficient;
  d.energy = energy;
  d.coupling_zeta = -m2 * energy;
  d.kappa_squared = -m2 * d.coupling_xi;
  d.kappa = std::sqrt(std::abs(d.kappa_squared));
  d.kappa_sign = d.kappa_squared > 0 ? 1 : (d.kappa_squared < 0 ? -1 : 0);

  std::vector<PowerTerm> out;
  if (d.coupling_zeta != 0.0) out.push_back({d.coupling_zeta, d.A});
  for (const auto& t : spec.terms()) {
    if (t.exponent == lead->exponent) continue;
    out.push_back({m2 * t.coefficient, dual_subleading(d.a, -t.exponent)});
  }
  return {PotentialSpec(std::move(out)), d};
}

inline DualResult dual_potential(const PotentialSpec& spec, double k) {
  if (!(k > 0.0)) fail(ErrorKind::InvalidArgument, "k must be positive");
  return dual_potential_at_energy(spec, k * k);
}

struct NPreservation {
  int n_original = 0;
  int n_dual = 0;
  bool preserved = false;
};

inline NPreservation check_n_preserved(const PotentialSpec& spec, double k) {
  auto lead = leading_behavior(spec);
  if (!lead || !(lead->exponent < 0.0 && lead->exponent > -2.0))
    fail(ErrorKind::OutOfDualityDomain, "N-preservation check needs a leading exponent in (-2, 0)");
  DualResult d = dual_potential(spec, k);
  PotentialClass c0 = classify(spec), c1 = classify(d.potential);
  return {c0.n_index.n, c1.n_index.n, c0.n_index == c1.n_index};
}

// Maps samples u(r) of the V problem to v(rho) = rho^{-A/4} u(rho^m).
struct DualSample {
  double rho, v;
};

inline std::vector<DualSample> dual_wavefunction(const DualityMap& d, const std::vector<double>& r, const std::vector<double>& u) {
  if (r.size() != u.size()) fail(ErrorKind::InvalidArgument, "r and u must have equal lengths");
  std::vector<DualSample> out;
  out.reserve(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    double rho = std::pow(r[i], 1.0 / d.m);
    out.push_back({rho, std::pow(rho, -d.A / 4.0) * u[i]});
  }
  return out;
}

}  // namespace tortoise
