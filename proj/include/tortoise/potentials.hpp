#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"

namespace tortoise {

struct PowerTerm {
  double coefficient = 0.0;
  double exponent = 0.0;

  friend bool operator==(const PowerTerm&, const PowerTerm&) = default;
};

// Sum of c_i r^{p_i}. Exponents are kept strictly increasing; an empty term
// list is the free potential.
class PotentialSpec {
 public:
  PotentialSpec() = default;

  explicit PotentialSpec(std::vector<PowerTerm> terms) {
    for (const auto& t : terms) {
      if (!std::isfinite(t.coefficient) || !std::isfinite(t.exponent))
        fail(ErrorKind::InvalidPotential, "non-finite coefficient or exponent");
    }
    std::stable_sort(terms.begin(), terms.end(),
                     [](const PowerTerm& a, const PowerTerm& b) { return a.exponent < b.exponent; });
    for (const auto& t : terms) {
      if (!terms_.empty() && terms_.back().exponent == t.exponent)
        terms_.back().coefficient += t.coefficient;
      else
        terms_.push_back(t);
    }
    std::erase_if(terms_, [](const PowerTerm& t) { return t.coefficient == 0.0; });
  }

  PotentialSpec(std::initializer_list<PowerTerm> terms)
      : PotentialSpec(std::vector<PowerTerm>(terms)) {}

  const std::vector<PowerTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  PotentialSpec scaled(double s) const {
    std::vector<PowerTerm> t = terms_;
    for (auto& x : t) x.coefficient *= s;
    return PotentialSpec(std::move(t));
  }

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;

 private:
  std::vector<PowerTerm> terms_;
};

namespace detail {
inline double checked(double v, const char* what) {
  if (!std::isfinite(v)) fail(ErrorKind::EvaluationOverflow, std::string(what) + " is not finite");
  return v;
}
inline void require_positive_r(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::InvalidArgument, "r must be positive and finite");
}
}  // namespace detail

inline double evaluate(const PotentialSpec& spec, double r) {
  detail::require_positive_r(r);
  double v = 0.0;
  for (const auto& t : spec.terms()) v += t.coefficient * std::pow(r, t.exponent);
  return detail::checked(v, "V(r)");
}

inline double derivative(const PotentialSpec& spec, double r) {
  detail::require_positive_r(r);
  double v = 0.0;
  for (const auto& t : spec.terms()) {
    if (t.exponent == 0.0) continue;
    v += t.coefficient * t.exponent * std::pow(r, t.exponent - 1.0);
  }
  return detail::checked(v, "V'(r)");
}

inline double second_derivative(const PotentialSpec& spec, double r) {
  detail::require_positive_r(r);
  double v = 0.0;
  for (const auto& t : spec.terms()) {
    double f = t.exponent * (t.exponent - 1.0);
    if (f == 0.0) continue;
    v += t.coefficient * f * std::pow(r, t.exponent - 2.0);
  }
  return detail::checked(v, "V''(r)");
}

// Always the maximal-exponent term. Empty spec has no leading behaviour.
inline std::optional<PowerTerm> leading_behavior(const PotentialSpec& spec) {
  if (spec.empty()) return std::nullopt;
  return spec.terms().back();
}

enum class Regime { Vanishing, Rising, Constant };

struct NIndex {
  bool marginal = false;
  int n = 0;  // meaningful only when !marginal

  static NIndex finite(int n) { return {false, n}; }
  static NIndex infinite() { return {true, 0}; }
  friend bool operator==(const NIndex&, const NIndex&) = default;
};

struct PotentialClass {
  Regime regime = Regime::Vanishing;
  NIndex n_index;
  std::optional<PowerTerm> leading;

  friend bool operator==(const PotentialClass&, const PotentialClass&) = default;
};

inline const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Vanishing: return "Vanishing";
    case Regime::Rising: return "Rising";
    case Regime::Constant: return "Constant";
  }
  return "?";
}

inline std::string n_index_name(const NIndex& n) {
  return n.marginal ? std::string("Marginal") : std::to_string(n.n);
}

namespace detail {
// N from the leading exponent alone. Borderline exponents (p = -1/N and
// p = 1/(N - 1/2)) land on N, so a small slack guards against 2/3 etc. not
// being exactly representable.
inline int n_from_exponent(double p) {
  constexpr double slack = 1e-10;
  if (p < -1.0) return 0;
  if (p < 0.0) return static_cast<int>(std::floor(-1.0 / p + slack));
  if (p > 2.0) return 0;
  return static_cast<int>(std::floor(1.0 / p + 0.5 + slack));
}
}  // namespace detail

inline PotentialClass classify(const PotentialSpec& spec) {
  auto lead = leading_behavior(spec);
  if (!lead) return {Regime::Vanishing, NIndex::finite(0), std::nullopt};
  double p = lead->exponent;
  if (p == 0.0) return {Regime::Constant, NIndex::infinite(), lead};
  Regime regime = p < 0.0 ? Regime::Vanishing : Regime::Rising;
  return {regime, NIndex::finite(detail::n_from_exponent(p)), lead};
}

// Logarithmic builtins, eta/ln r and eta ln r. Neither reduces to a power sum
// so they classify straight to Marginal.
struct LogPotential {
  enum class Kind { InverseLog, Log };
  Kind kind = Kind::Log;
  double strength = 1.0;

  friend bool operator==(const LogPotential&, const LogPotential&) = default;
};

inline double domain_min(const LogPotential& v) { return v.kind == LogPotential::Kind::InverseLog ? 1.0 : 0.0; }

inline double evaluate(const LogPotential& v, double r) {
  detail::require_positive_r(r);
  if (v.kind == LogPotential::Kind::InverseLog) {
    if (r <= 1.0) fail(ErrorKind::OutOfDomain, "inv_log needs r > 1");
    return detail::checked(v.strength / std::log(r), "V(r)");
  }
  return v.strength * std::log(r);
}

inline double derivative(const LogPotential& v, double r) {
  detail::require_positive_r(r);
  if (v.kind == LogPotential::Kind::InverseLog) {
    double L = std::log(r);
    return detail::checked(-v.strength / (r * L * L), "V'(r)");
  }
  return v.strength / r;
}

inline double second_derivative(const LogPotential& v, double r) {
  detail::require_positive_r(r);
  if (v.kind == LogPotential::Kind::InverseLog) {
    double L = std::log(r);
    return detail::checked(v.strength * (L + 2.0) / (r * r * L * L * L), "V''(r)");
  }
  return -v.strength / (r * r);
}

inline PotentialClass classify(const LogPotential& v) {
  Regime regime = v.kind == LogPotential::Kind::InverseLog ? Regime::Vanishing : Regime::Rising;
  return {regime, NIndex::infinite(), std::nullopt};
}

using Potential = std::variant<PotentialSpec, LogPotential>;

inline double evaluate(const Potential& v, double r) {
  return std::visit([r](const auto& x) { return evaluate(x, r); }, v);
}
inline double derivative(const Potential& v, double r) {
  return std::visit([r](const auto& x) { return derivative(x, r); }, v);
}
inline double second_derivative(const Potential& v, double r) {
  return std::visit([r](const auto& x) { return second_derivative(x, r); }, v);
}
inline PotentialClass classify(const Potential& v) {
  return std::visit([](const auto& x) { return classify(x); }, v);
}

inline double domain_min(const PotentialSpec&) { return 0.0; }
inline double domain_min(const Potential& v) {
  return std::visit([](const auto& x) { return domain_min(x); }, v);
}

// Power terms of V in the vicinity of the origin, used by the Frobenius start.
inline std::vector<PowerTerm> origin_terms(const PotentialSpec& spec) { return spec.terms(); }

}  // namespace tortoise
