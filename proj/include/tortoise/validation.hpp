#pragma once

// Acceptance checks. Each returns measured vs threshold plus wall time; the
// runtime budget counts toward the verdict.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "duality.hpp"
#include "hypergeometric.hpp"
#include "phase_shift.hpp"
#include "potentials.hpp"
#include "radial_solver.hpp"
#include "reference_solutions.hpp"
#include "tortoise_map.hpp"

namespace tortoise {

// V = -depth for r < radius, zero outside.
struct SquareWell {
  double depth = 1.0;
  double radius = 1.0;
};
inline double evaluate(const SquareWell& w, double r) { return r < w.radius ? -w.depth : 0.0; }
inline std::vector<PowerTerm> origin_terms(const SquareWell& w) { return {{-w.depth, 0.0}}; }
inline std::vector<double> breakpoints(const SquareWell& w) { return {w.radius}; }

inline double square_well_delta0(double depth, double radius, double k) {
  double kp = std::sqrt(k * k + depth);
  return std::atan(k * std::tan(kp * radius) / kp) - k * radius;
}

namespace validation {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

namespace detail {

inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// Runs body, times it, and folds the time budget into the verdict.
inline CheckResult timed(int id, std::string name, double limit, const std::function<void(CheckResult&)>& body) {
  CheckResult c;
  c.id = id;
  c.name = std::move(name);
  c.time_limit = limit;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.passed = false;
    c.detail += (c.detail.empty() ? "" : "; ") + std::string("exception: ") + e.what();
  }
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.seconds > limit) {
    c.passed = false;
    c.detail += (c.detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  return c;
}

}  // namespace detail

inline CheckResult classification_table() {
  return detail::timed(1, "classification table", 1.0, [](CheckResult& c) {
    struct Row {
      const char* label;
      Potential v;
      Regime regime;
      NIndex n;
    };
    const double alpha = 2.0, w2 = 1.0, xi = 1.0, zeta = 1.0;
    std::vector<Row> rows = {
        {"coulomb", PotentialSpec{{alpha, -1.0}}, Regime::Vanishing, NIndex::finite(1)},
        {"oscillator", PotentialSpec{{w2, 2.0}}, Regime::Rising, NIndex::finite(1)},
        {"1/sqrt(r)", PotentialSpec{{xi, -0.5}}, Regime::Vanishing, NIndex::finite(2)},
        {"r^(2/3)", PotentialSpec{{zeta, 2.0 / 3.0}}, Regime::Rising, NIndex::finite(2)},
        {"r^(-3/2)", PotentialSpec{{xi, -1.5}}, Regime::Vanishing, NIndex::finite(0)},
        {"r^6", PotentialSpec{{zeta, 6.0}}, Regime::Rising, NIndex::finite(0)},
        {"constant", PotentialSpec{{0.3, 0.0}}, Regime::Constant, NIndex::infinite()},
        {"inv_log", LogPotential{LogPotential::Kind::InverseLog, 1.0}, Regime::Vanishing, NIndex::infinite()},
        {"log", LogPotential{LogPotential::Kind::Log, 1.0}, Regime::Rising, NIndex::infinite()},
    };
    int bad = 0;
    for (const auto& r : rows) {
      PotentialClass pc = classify(r.v);
      if (pc.regime != r.regime || !(pc.n_index == r.n)) {
        ++bad;
        c.detail += std::string(r.label) + " -> " + regime_name(pc.regime) + "/" + n_index_name(pc.n_index) + " ";
      }
    }
    c.measured = bad;
    c.threshold = 0;
    c.passed = bad == 0;
    if (c.detail.empty()) c.detail = std::to_string(rows.size()) + " rows match";
  });
}

inline CheckResult closed_form_maps() {
  return detail::timed(2, "closed-form tortoise maps", 1.0, [](CheckResult& c) {
    struct Case {
      const char* label;
      PotentialSpec spec;
      double k;
      std::function<double(double)> ref;
    };
    const double al = 2.0, k1 = 1.3;
    const double om = 1.5, k2 = 1.2;
    const double xi = 0.7, k3 = 1.1;
    const double ze = 1.3, k4 = 0.9;
    const double xi5 = 1.0, k5 = 1.0;
    const double z6 = 0.8, k6 = 1.1;
    std::vector<Case> cases = {
        {"coulomb", {{al, -1.0}}, k1, [=](double r) { return r - al / (2 * k1 * k1) * std::log(r); }},
        {"oscillator", {{om * om, 2.0}}, k2,
         [=](double r) {
           return om * r * r / (2 * k2) - k2 / (2 * om) * std::log(r) + 1.0 / (2 * k2) * std::log(om * r);
         }},
        {"1/sqrt(r)", {{xi, -0.5}}, k3,
         [=](double r) {
           return r - xi / (k3 * k3) * std::sqrt(r) - xi * xi / (8 * std::pow(k3, 4)) * std::log(r);
         }},
        {"r^(2/3)", {{ze, 2.0 / 3.0}}, k4,
         [=](double r) {
           double s = std::sqrt(ze);
           return 3 * s / (4 * k4) * std::pow(r, 4.0 / 3.0) - 3 * k4 / (4 * s) * std::pow(r, 2.0 / 3.0) -
                  std::pow(k4, 3) / (8 * std::pow(ze, 1.5)) * std::log(r) +
                  1.0 / (4 * k4) * std::log(ze * std::pow(r, 2.0 / 3.0));
         }},
        {"r^(-3/2)", {{xi5, -1.5}}, k5, [](double r) { return r; }},
        {"r^6", {{z6, 6.0}}, k6,
         [=](double r) { return std::sqrt(z6) / (4 * k6) * std::pow(r, 4) + 1.0 / (4 * k6) * std::log(z6 * std::pow(r, 6)); }},
    };
    double worst = 0.0;
    for (const auto& cs : cases) {
      TortoiseMap m = build_map(cs.spec, cs.k);
      double base = eval_map(m, 10.0), rbase = cs.ref(10.0);
      for (double r : {100.0, 1e3, 1e4}) {
        double got = eval_map(m, r) - base, want = cs.ref(r) - rbase;
        double rel = std::abs(got - want) / std::abs(want);
        if (rel > worst) {
          worst = rel;
          c.detail = std::string("worst ") + cs.label + " at r=" + detail::num(r);
        }
      }
    }
    c.measured = worst;
    c.threshold = 1e-12;
    c.passed = worst < c.threshold;
  });
}

inline CheckResult hypergeometric_identity() {
  return detail::timed(3, "hypergeometric identity", 5.0, [](CheckResult& c) {
    double worst = 0.0;
    for (const PotentialSpec& s : {PotentialSpec{{2.0, -1.0}}, PotentialSpec{{1.0, -0.5}}}) {
      TortoiseMap m = build_map(s, 1.0);
      const double ra = 50.0;
      for (double r : {60.0, 100.0, 200.0, 300.0, 400.0, 500.0}) {
        double a = eval_map(m, r) - eval_map(m, ra);
        double b = eval_hypergeometric(s, 1.0, m.order, r, ra);
        worst = std::max(worst, std::abs(a - b));
      }
    }
    c.measured = worst;
    c.threshold = 1e-8;
    c.passed = worst < c.threshold;
    c.detail = "Coulomb and 1/sqrt(r), k=1, r in [50, 500]";
  });
}

inline CheckResult coulomb_phase_shift() {
  return detail::timed(4, "Coulomb phase shift", 30.0, [](CheckResult& c) {
    const PotentialSpec coul{{2.0, -1.0}};
    const double k = 1.0;
    const double oracle = log_gamma({1.0, 1.0}).im;
    PhaseShiftSettings set;
    set.extract.log_reference = LogReference::TwoKR;
    double lo = 1e9, hi = -1e9, worst = 0.0;
    std::ostringstream os;
    for (double rm : {200.0, 500.0, 1000.0, 2000.0}) {
      PhaseShiftResult p = phase_shift(coul, k, 0, rm, set);
      lo = std::min(lo, p.delta);
      hi = std::max(hi, p.delta);
      worst = std::max(worst, std::abs(p.delta - oracle));
      os << "d(" << rm << ")=" << detail::num(p.delta) << " ";
    }
    const double spread = hi - lo;

    // Negative control: the same solution read with the plain sine, once in r*
    // and once in r.
    RadialProblem<PotentialSpec> pb;
    pb.potential = coul;
    pb.k = k;
    pb.r_stop = 600.0;
    pb.stops = {500.0};
    RadialSolution sol = integrate(pb);
    ExtractOptions plain;
    plain.model = MatchModel::Asymptotic;
    plain.tail_correction = false;
    plain.max_drift = INFINITY;
    double d_tort = extract_phase(sol, build_map(coul, k), 0, k, 500.0, plain).drift;
    double d_id = extract_phase(sol, TortoiseMap::identity(k), 0, k, 500.0, plain).drift;
    const double ratio = d_id / d_tort;

    c.measured = std::max(worst, spread);
    c.threshold = 1e-4;
    c.passed = worst < 1e-4 && spread < 1e-4 && ratio >= 10.0;
    os << "oracle=" << detail::num(oracle) << " max|d-oracle|=" << detail::num(worst) << " spread=" << detail::num(spread)
       << " control drift ratio=" << detail::num(ratio) << " (identity " << detail::num(d_id) << ", tortoise "
       << detail::num(d_tort) << ")";
    c.detail = os.str();
  });
}

inline CheckResult free_particle_null() {
  return detail::timed(5, "free-particle null test", 5.0, [](CheckResult& c) {
    double worst = 0.0;
    for (int l : {0, 1, 2})
      for (double k : {0.5, 1.0, 2.0}) worst = std::max(worst, std::abs(phase_shift(PotentialSpec{}, k, l, 100.0).delta));
    c.measured = worst;
    c.threshold = 1e-8;
    c.passed = worst < c.threshold;
    c.detail = "l in {0,1,2}, k in {0.5,1,2}, r_match=100";
  });
}

inline CheckResult square_well_oracle() {
  return detail::timed(6, "square-well oracle", 5.0, [](CheckResult& c) {
    double worst = 0.0;
    std::ostringstream os;
    for (double k : {0.5, 1.0, 2.0}) {
      RadialProblem<SquareWell> pb;
      pb.potential = {1.0, 1.0};
      pb.k = k;
      pb.r_stop = 24.0;
      pb.stops = {20.0};
      RadialSolution sol = integrate(pb);
      PhaseShiftResult p = extract_phase(sol, TortoiseMap::identity(k), 0, k, 20.0);
      double want = square_well_delta0(1.0, 1.0, k);
      double err = tortoise::detail::mod_pi_distance(p.delta, want);
      worst = std::max(worst, err);
      os << "k=" << k << " d=" << detail::num(p.delta) << " ";
    }
    c.measured = worst;
    c.threshold = 1e-6;
    c.passed = worst < c.threshold;
    c.detail = os.str() + "(compared modulo pi)";
  });
}

inline CheckResult duality_checks() {
  return detail::timed(7, "duality", 1.0, [](CheckResult& c) {
    std::ostringstream os;
    bool ok = true;
    double worst = 0.0;
    for (auto [a, A] : {std::pair{1.0, 2.0}, std::pair{0.5, 2.0 / 3.0}, std::pair{1.5, 6.0}}) {
      double e = std::abs(dual_exponent(a) - A);
      worst = std::max(worst, e);
      if (e > 1e-12) ok = false;
    }
    for (int i = 1; i <= 39; ++i) {
      double a = 0.05 * i;
      double A = dual_exponent(a);
      worst = std::max(worst, std::abs(inverse_dual_exponent(A) - a));
      worst = std::max(worst, std::abs(dual_exponent(inverse_dual_exponent(A)) - A) / std::max(1.0, A));
    }
    if (worst > 1e-12) ok = false;

    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int broken = 0;
    for (int i = 0; i < 200; ++i) {
      double a = 1.0 - U(rng);  // (0, 1]
      if (!check_n_preserved(PotentialSpec{{-1.0, -a}}, 1.0).preserved) ++broken;
    }
    if (broken) ok = false;

    // Coulomb bound state (alpha = -1, E = -kappa_c^2) vs its oscillator dual,
    // both log-amplitudes built from independently constructed maps.
    const double alpha = -1.0, kc = 0.5;
    const PotentialSpec coul{{alpha, -1.0}};
    DualResult d = dual_potential_at_energy(coul, -kc * kc);
    TortoiseMap osc = build_map(d.potential, d.map.kappa);
    // exp(i k r*) at k = i kappa equals exp(-kappa r*) of the map built for -V.
    TortoiseMap bound = build_map(coul.scaled(-1.0), kc);
    std::vector<double> diff;
    for (double rho : {3.0, 4.0, 5.0, 6.0, 7.0}) {
      double lhs = -d.map.kappa * eval_map(osc, rho);
      double rhs = -kc * eval_map(bound, std::pow(rho, d.map.m)) - d.map.A / 4.0 * std::log(rho);
      diff.push_back(lhs - rhs);
    }
    auto [mn, mx] = std::minmax_element(diff.begin(), diff.end());
    double coord = *mx - *mn;
    if (coord > 1e-10) ok = false;

    c.measured = std::max(worst, coord);
    c.threshold = 1e-12;
    c.passed = ok;
    os << "exponent/involution err=" << detail::num(worst) << " N broken=" << broken << "/200"
       << " coordinate spread=" << detail::num(coord);
    c.detail = os.str();
  });
}

inline CheckResult rising_asymptotics() {
  return detail::timed(8, "rising-potential asymptotics", 10.0, [](CheckResult& c) {
    std::ostringstream os;
    struct Case {
      const char* label;
      PotentialSpec spec;
      double k;
    };
    std::vector<Case> cases = {{"w^2 r^2 (w=1,k=2)", {{1.0, 2.0}}, 2.0},
                               {"r^(2/3) (zeta=1,k=1)", {{1.0, 2.0 / 3.0}}, 1.0},
                               {"r^6 (zeta=1,k=1)", {{1.0, 6.0}}, 1.0}};
    double worst_ratio = 0.0;
    for (const auto& cs : cases) {
      TortoiseMap m = build_map(cs.spec, cs.k);
      double r = 2.0 * m.validity_floor;
      double prev = asymptotic_residual(cs.spec, cs.k, 0, m, r);
      for (int j = 0; j < 5; ++j) {
        r *= 2.0;
        double cur = asymptotic_residual(cs.spec, cs.k, 0, m, r);
        worst_ratio = std::max(worst_ratio, cur / prev);
        prev = cur;
      }
    }
    os << "max rho(2r)/rho(r)=" << detail::num(worst_ratio) << "; ";

    // log u_exact + k r* over [4, 8], omega = k = 1.
    TortoiseMap osc = build_map(PotentialSpec{{1.0, 2.0}}, 1.0);
    double pmin = 1e300, pmax = -1e300, mmin = 1e300, mmax = -1e300;
    for (int i = 0; i <= 40; ++i) {
      double r = 4.0 + 0.1 * i;
      double lu = std::log(std::abs(oscillator_exact(0, 1.0, 1.0, r)));
      double rs = eval_map(osc, r);
      pmin = std::min(pmin, lu + rs);
      pmax = std::max(pmax, lu + rs);
      mmin = std::min(mmin, lu - rs);
      mmax = std::max(mmax, lu - rs);
    }
    double spread = pmax - pmin;
    os << "spread of log u + k r* on [4,8]=" << detail::num(spread) << " (log u - k r*: " << detail::num(mmax - mmin) << ")";

    c.measured = spread;
    c.threshold = 1e-3;
    c.passed = worst_ratio < 0.5 && spread < 1e-3;
    c.detail = os.str();
  });
}

inline CheckResult solver_vs_oracle() {
  return detail::timed(9, "solver vs Coulomb oracle", 10.0, [](CheckResult& c) {
    std::ostringstream os;
    double worst = 0.0;
    for (int l : {0, 1}) {
      std::vector<double> rs;
      for (int i = 0; i <= 250; ++i) rs.push_back(0.1 + (50.0 - 0.1) * i / 250.0);
      RadialProblem<PotentialSpec> pb;
      pb.potential = PotentialSpec{{2.0, -1.0}};
      pb.k = 1.0;
      pb.l = l;
      pb.r_stop = 50.0;
      pb.stops = rs;
      RadialSolution sol = integrate(pb);
      std::vector<double> un, ue;
      for (double r : rs) {
        std::size_t i = tortoise::detail::nearest_index(sol.grid, r);
        un.push_back(sol.u[i]);
        ue.push_back(coulomb_regular(l, 2.0, 1.0, sol.grid[i]));
      }
      double num = 0, den = 0, emax = 0;
      for (std::size_t i = 0; i < un.size(); ++i) {
        num += un[i] * ue[i];
        den += un[i] * un[i];
        emax = std::max(emax, std::abs(ue[i]));
      }
      double s = num / den, e = 0;
      for (std::size_t i = 0; i < un.size(); ++i) e = std::max(e, std::abs(s * un[i] - ue[i]));
      e /= emax;
      worst = std::max(worst, e);
      os << "l=" << l << " err=" << detail::num(e) << " ";
    }
    c.measured = worst;
    c.threshold = 1e-6;
    c.passed = worst < c.threshold;
    c.detail = os.str() + "(sup-norm, one least-squares constant)";
  });
}

inline CheckResult remainder_decay() {
  return detail::timed(10, "remainder decay", 1.0, [](CheckResult& c) {
    int bad = 0;
    for (const PotentialSpec& s : {PotentialSpec{{2.0, -1.0}}, PotentialSpec{{1.0, -0.5}}, PotentialSpec{{1.0, -1.5}}}) {
      int N = classify(s).n_index.n;
      double prev = INFINITY;
      for (int j = 2; j <= 6; ++j) {
        double r = std::pow(10.0, j);
        double v = r * std::abs(remainder_potential(s, 1.0, N, r));
        if (!(v < prev)) ++bad;
        prev = v;
      }
    }
    c.measured = bad;
    c.threshold = 0;
    c.passed = bad == 0;
    c.detail = "Coulomb, 1/sqrt(r), r^(-3/2) along r = 10^2..10^6";
  });
}

inline std::vector<CheckResult> run_all() {
  return {classification_table(), closed_form_maps(),   hypergeometric_identity(), coulomb_phase_shift(),
          free_particle_null(),   square_well_oracle(), duality_checks(),          rising_asymptotics(),
          solver_vs_oracle(),     remainder_decay()};
}

}  // namespace validation
}  // namespace tortoise
