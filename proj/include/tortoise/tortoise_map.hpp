#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "hypergeometric.hpp"
#include "potentials.hpp"
#include "quadrature.hpp"

namespace tortoise {

struct PowerOfR {
  double coefficient = 0.0;
  double exponent = 0.0;
  friend bool operator==(const PowerOfR&, const PowerOfR&) = default;
};

struct LogOfR {
  double coefficient = 0.0;
  friend bool operator==(const LogOfR&, const LogOfR&) = default;
};

using MapTerm = std::variant<PowerOfR, LogOfR>;

// TermList: closed form. The other kinds carry a closed piece (the log of V
// on the rising side) plus a quadrature from the validity floor.
enum class MapKind { TermList, VanishingMarginal, RisingMarginal, RisingSeries };

struct TortoiseMap {
  PotentialClass cls;
  double k = 1.0;
  std::vector<MapTerm> terms;
  double validity_floor = 1e-6;
  MapKind kind = MapKind::TermList;
  std::optional<Potential> potential;  // needed by the quadrature kinds
  int order = 0;                       // N of the truncated series

  // r* = r, used as the negative control in phase extraction.
  static TortoiseMap identity(double k) {
    TortoiseMap m;
    m.cls = {Regime::Vanishing, NIndex::finite(0), std::nullopt};
    m.k = k;
    m.terms = {PowerOfR{1.0, 1.0}};
    m.validity_floor = 0.0;
    return m;
  }
};

namespace detail {

constexpr double floor_scan_lo = 1e-6;
constexpr double floor_scan_hi = 1e9;

// Largest root of |V|/k^2 = 1 on the scan range, times 1.01. Falls back to
// the lower scan bound when there is no crossing.
template <class P>
double validity_floor(const P& v, double k) {
  double lo = std::max(floor_scan_lo, domain_min(v) * (1.0 + 1e-6));
  auto f = [&](double r) { return std::abs(evaluate(v, r)) / (k * k) - 1.0; };
  const int per_decade = 8;
  const double step = std::pow(10.0, 1.0 / per_decade);
  double hi = floor_scan_hi;
  double fhi = f(hi);
  while (hi > lo) {
    double r = std::max(lo, hi / step);
    double fr = f(r);
    if ((fr > 0) != (fhi > 0)) {
      double a = r, b = hi;
      double fa = fr;
      for (int it = 0; it < 200 && b - a > 1e-15 * b; ++it) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if ((fm > 0) == (fa > 0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return 1.01 * b;
    }
    hi = r;
    fhi = fr;
  }
  return lo;
}

// V^eta as a power sum, exponent -> coefficient.
inline std::map<double, double> power_of_sum(const std::vector<PowerTerm>& terms, int eta) {
  std::map<double, double> acc{{0.0, 1.0}};
  for (int i = 0; i < eta; ++i) {
    std::map<double, double> next;
    for (const auto& [e, c] : acc)
      for (const auto& t : terms) next[e + t.exponent] += c * t.coefficient;
    acc = std::move(next);
  }
  return acc;
}

constexpr double log_exponent_tol = 1e-12;

// Append the antiderivative of c r^e.
inline void add_integral(std::map<double, double>& powers, double& log_coef, double c, double e) {
  if (std::abs(e + 1.0) < log_exponent_tol)
    log_coef += c;
  else
    powers[e + 1.0] += c / (e + 1.0);
}

inline std::vector<MapTerm> pack_terms(const std::map<double, double>& powers, double log_coef) {
  std::vector<MapTerm> out;
  for (auto it = powers.rbegin(); it != powers.rend(); ++it)
    if (it->second != 0.0) out.push_back(PowerOfR{it->second, it->first});
  if (log_coef != 0.0) out.push_back(LogOfR{log_coef});
  return out;
}

inline void require_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) fail(ErrorKind::InvalidArgument, "k must be positive and finite");
}

}  // namespace detail

inline TortoiseMap build_map(const PotentialSpec& spec, double k) {
  detail::require_k(k);
  TortoiseMap m;
  m.cls = classify(spec);
  m.k = k;
  m.potential = spec;
  m.validity_floor = detail::validity_floor(spec, k);
  const double k2 = k * k;

  if (m.cls.regime == Regime::Constant) {
    double c = m.cls.leading->coefficient;
    if (c == k2) fail(ErrorKind::TurningPointInRange, "constant potential equals k^2");
    m.kind = c < k2 ? MapKind::VanishingMarginal : MapKind::RisingMarginal;
    return m;
  }

  int N = m.cls.n_index.n;
  m.order = N;

  if (m.cls.regime == Regime::Vanishing) {
    std::map<double, double> powers{{1.0, 1.0}};
    double log_coef = 0.0;
    for (int eta = 1; eta <= N; ++eta) {
      double s = sigma(eta) / std::pow(k2, eta);
      for (const auto& [e, c] : detail::power_of_sum(spec.terms(), eta)) detail::add_integral(powers, log_coef, -s * c, e);
    }
    m.terms = detail::pack_terms(powers, log_coef);
    return m;
  }

  // Rising.
  if (m.cls.leading->coefficient <= 0.0)
    fail(ErrorKind::InvalidPotential, "rising potential needs a positive leading coefficient");
  if (spec.size() > 1) {
    m.kind = MapKind::RisingSeries;
    return m;
  }
  const double zeta = spec.terms()[0].coefficient;
  const double p = spec.terms()[0].exponent;
  std::map<double, double> powers;
  double log_coef = p / (4.0 * k);  // from (1/4k) ln(zeta r^p / k^2), constant dropped
  for (int eta = 0; eta <= N; ++eta) {
    double c = -sigma(eta) * std::pow(k2 / zeta, eta - 0.5);
    detail::add_integral(powers, log_coef, c, -p * (eta - 0.5));
  }
  m.terms = detail::pack_terms(powers, log_coef);
  return m;
}

inline TortoiseMap build_map(const LogPotential& v, double k) {
  detail::require_k(k);
  TortoiseMap m;
  m.cls = classify(v);
  m.k = k;
  m.potential = v;
  m.validity_floor = detail::validity_floor(v, k);
  m.kind = m.cls.regime == Regime::Vanishing ? MapKind::VanishingMarginal : MapKind::RisingMarginal;
  if (m.kind == MapKind::RisingMarginal && v.strength <= 0.0)
    fail(ErrorKind::InvalidPotential, "log potential needs positive strength to rise");
  return m;
}

inline TortoiseMap build_map(const Potential& v, double k) {
  return std::visit([k](const auto& x) { return build_map(x, k); }, v);
}

namespace detail {

inline void require_in_domain(const TortoiseMap& m, double r) {
  if (!(r > m.validity_floor) && !(m.validity_floor == 0.0 && r > 0.0))
    fail(ErrorKind::OutOfDomain, "r = " + std::to_string(r) + " is not above the validity floor " + std::to_string(m.validity_floor));
}

// dr*/dr for the quadrature kinds.
inline double integrand(const TortoiseMap& m, double r) {
  const Potential& v = *m.potential;
  const double k2 = m.k * m.k;
  double V = evaluate(v, r);
  switch (m.kind) {
    case MapKind::VanishingMarginal: {
      double d = 1.0 - V / k2;
      if (d < 0.0) fail(ErrorKind::TurningPointInRange, "V/k^2 > 1 at r = " + std::to_string(r));
      return std::sqrt(d);
    }
    case MapKind::RisingMarginal: {
      double d = V / k2 - 1.0;
      if (d < 0.0) fail(ErrorKind::TurningPointInRange, "V/k^2 < 1 at r = " + std::to_string(r));
      return std::sqrt(d);
    }
    case MapKind::RisingSeries: {
      if (V <= 0.0) fail(ErrorKind::NotRising, "V <= 0 at r = " + std::to_string(r));
      double y = k2 / V, s = 0.0;
      for (int eta = 0; eta <= m.order; ++eta) s -= sigma(eta) * std::pow(y, eta - 0.5);
      return s;
    }
    case MapKind::TermList: break;
  }
  return 0.0;
}

inline double closed_log_piece(const TortoiseMap& m, double r) {
  if (m.kind == MapKind::VanishingMarginal) return 0.0;
  double V = evaluate(*m.potential, r);
  if (V <= 0.0) fail(ErrorKind::NotRising, "V <= 0 at r = " + std::to_string(r));
  return std::log(V / (m.k * m.k)) / (4.0 * m.k);
}

}  // namespace detail

inline double eval_map(const TortoiseMap& m, double r) {
  detail::require_in_domain(m, r);
  if (m.kind == MapKind::TermList) {
    double s = 0.0;
    for (const auto& t : m.terms) {
      if (auto* p = std::get_if<PowerOfR>(&t))
        s += p->exponent == 1.0 ? p->coefficient * r : p->coefficient * std::pow(r, p->exponent);
      else
        s += std::get<LogOfR>(t).coefficient * std::log(r);
    }
    return s;
  }
  auto f = [&m](double x) { return detail::integrand(m, x); };
  return detail::closed_log_piece(m, r) + quad::integrate(f, m.validity_floor, r, 1e-13);
}

inline double map_derivative(const TortoiseMap& m, double r) {
  detail::require_in_domain(m, r);
  if (m.kind == MapKind::TermList) {
    double s = 0.0;
    for (const auto& t : m.terms) {
      if (auto* p = std::get_if<PowerOfR>(&t))
        s += p->exponent == 1.0 ? p->coefficient : p->coefficient * p->exponent * std::pow(r, p->exponent - 1.0);
      else
        s += std::get<LogOfR>(t).coefficient / r;
    }
    return s;
  }
  double s = detail::integrand(m, r);
  if (m.kind != MapKind::VanishingMarginal) {
    const Potential& v = *m.potential;
    s += derivative(v, r) / (4.0 * m.k * evaluate(v, r));
  }
  return s;
}

inline double map_second_derivative(const TortoiseMap& m, double r) {
  detail::require_in_domain(m, r);
  if (m.kind == MapKind::TermList) {
    double s = 0.0;
    for (const auto& t : m.terms) {
      if (auto* p = std::get_if<PowerOfR>(&t)) {
        double f = p->exponent * (p->exponent - 1.0);
        if (f != 0.0) s += p->coefficient * f * std::pow(r, p->exponent - 2.0);
      } else {
        s -= std::get<LogOfR>(t).coefficient / (r * r);
      }
    }
    return s;
  }
  const Potential& v = *m.potential;
  const double k = m.k, k2 = k * k;
  double V = evaluate(v, r), dV = derivative(v, r), d2V = second_derivative(v, r);
  double log_part = (d2V * V - dV * dV) / (4.0 * k * V * V);
  switch (m.kind) {
    case MapKind::VanishingMarginal: return -dV / (2.0 * k2 * detail::integrand(m, r));
    case MapKind::RisingMarginal: return log_part + dV / (2.0 * k2 * detail::integrand(m, r));
    case MapKind::RisingSeries: {
      double y = k2 / V, s = 0.0;
      for (int eta = 0; eta <= m.order; ++eta) s += sigma(eta) * (eta - 0.5) * std::pow(y, eta - 0.5) * dV / V;
      return log_part + s;
    }
    case MapKind::TermList: break;
  }
  return 0.0;
}

// r*(r) - r*(r_anchor) from the hypergeometric form of the map: the exact
// square-root phase plus the 2F1 tail left over after truncating at order N.
inline double eval_hypergeometric(const PotentialSpec& spec, double k, int N, double r, double r_anchor) {
  detail::require_k(k);
  if (N < 0) fail(ErrorKind::InvalidArgument, "N must be nonnegative");
  const double k2 = k * k;
  const double s = sigma(N + 1);
  const bool rising = classify(spec).regime == Regime::Rising;
  auto f = [&](double x) {
    double V = evaluate(spec, x);
    if (!rising) {
      double z = V / k2;
      return std::sqrt(1.0 - z) + s * std::pow(z, N + 1) * hyp2f1_series(1.0, N + 0.5, N + 2.0, z);
    }
    double y = k2 / V;
    return std::sqrt(V / k2) * std::sqrt(1.0 - y) + s * std::pow(y, N + 0.5) * hyp2f1_series(1.0, N + 0.5, N + 2.0, y);
  };
  // Fail early with the documented error rather than deep inside quadrature.
  for (double x : {r, r_anchor}) {
    double V = evaluate(spec, x);
    double z = rising ? k2 / V : V / k2;
    if (!(std::abs(z) <= 0.9))
      fail(ErrorKind::HypergeometricDomain, "series argument " + std::to_string(z) + " at r = " + std::to_string(x));
  }
  double v = quad::integrate(f, r_anchor, r, 1e-14);
  if (rising) v += (std::log(evaluate(spec, r)) - std::log(evaluate(spec, r_anchor))) / (4.0 * k);
  return v;
}

// Effective short-range potential left by the order-N map.
inline double remainder_potential(const PotentialSpec& spec, double k, int N, double r) {
  detail::require_k(k);
  double V = evaluate(spec, r);
  return 2.0 * sigma(N + 1) * std::pow(V / (k * k), N) * V;
}

// Sum of LogOfR coefficients, used to re-reference log terms to ln(2kr).
inline double log_coefficient(const TortoiseMap& m) {
  double c = 0.0;
  for (const auto& t : m.terms)
    if (auto* l = std::get_if<LogOfR>(&t)) c += l->coefficient;
  return c;
}

}  // namespace tortoise
