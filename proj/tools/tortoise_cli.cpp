// tortoise: command-line front end.
//
// Exit codes: 0 ok, 1 validate found failures, 2 parse error, 3 domain error
// from the library, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <tortoise/tortoise.hpp>

namespace {

using namespace tortoise;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> make_grid(double start, double stop, int count, const std::string& spacing) {
  if (count < 1) fail(ErrorKind::InvalidArgument, "grid count must be at least 1");
  if (!(start > 0.0)) fail(ErrorKind::InvalidArgument, "grid start must be positive");
  if (count == 1) {
    if (stop != start) fail(ErrorKind::InvalidArgument, "a one-point grid needs start == stop");
    return {start};
  }
  if (!(start < stop)) fail(ErrorKind::InvalidArgument, "grid needs start < stop");
  std::vector<double> r(count);
  for (int i = 0; i < count; ++i) {
    double t = static_cast<double>(i) / (count - 1);
    r[i] = spacing == "geometric" ? start * std::pow(stop / start, t) : start + (stop - start) * t;
  }
  r.back() = stop;
  return r;
}

struct Sweep {
  double k = 1.0;
  std::vector<double> k_sweep;  // start stop count
  std::vector<double> ks() const {
    if (k_sweep.empty()) return {k};
    if (k_sweep.size() != 3) fail(ErrorKind::InvalidArgument, "--k-sweep takes start stop count");
    int n = static_cast<int>(k_sweep[2]);
    if (n < 1 || n != k_sweep[2]) fail(ErrorKind::InvalidArgument, "--k-sweep count must be a positive integer");
    if (n == 1) return {k_sweep[0]};
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(k_sweep[0] + (k_sweep[1] - k_sweep[0]) * i / (n - 1));
    return out;
  }
};

std::string classify_text(const std::string& lit) {
  Potential v = parse_potential(lit);
  PotentialClass c = classify(v);
  std::ostringstream os;
  os << "schema: 1\ncommand: classify\npotential: " << to_literal(v) << "\n";
  os << "regime: " << regime_name(c.regime) << "\n";
  os << "N: " << n_index_name(c.n_index) << "\n";
  if (c.leading) os << "leading_coefficient: " << g(c.leading->coefficient) << "\nleading_exponent: " << g(c.leading->exponent) << "\n";
  return os.str();
}

std::string tortoise_csv(const std::string& lit, double k, const std::vector<double>& grid_args, const std::string& spacing) {
  Potential v = parse_potential(lit);
  if (grid_args.size() != 3) fail(ErrorKind::InvalidArgument, "--grid takes start stop count");
  int count = static_cast<int>(grid_args[2]);
  if (count != grid_args[2]) fail(ErrorKind::InvalidArgument, "grid count must be an integer");
  std::vector<double> grid = make_grid(grid_args[0], grid_args[1], count, spacing);
  TortoiseMap m = build_map(v, k);
  const auto* spec = std::get_if<PotentialSpec>(&v);
  bool has_rem = spec && m.cls.regime == Regime::Vanishing && !m.cls.n_index.marginal;

  std::ostringstream os;
  os << "# schema: 1\n# command: tortoise\n# potential: " << to_literal(v) << "\n# k: " << g(k) << "\n";
  os << "# grid: " << g(grid_args[0]) << " " << g(grid_args[1]) << " " << count << " " << spacing << "\n";
  os << "# N: " << n_index_name(m.cls.n_index) << "\n# validity_floor: " << g(m.validity_floor) << "\n";
  os << "# r_star is defined up to an additive constant\n";
  os << "r,r_star,dr_star_dr,remainder_potential\n";
  for (double r : grid) {
    os << g(r) << "," << g(eval_map(m, r)) << "," << g(map_derivative(m, r)) << ",";
    os << (has_rem ? g(remainder_potential(*spec, k, m.order, r)) : std::string("nan")) << "\n";
  }
  return os.str();
}

std::string solve_csv(const std::string& lit, double k, int l, double r_start, double r_stop, double step_hint, double tol) {
  Potential v = parse_potential(lit);
  const auto* sp = std::get_if<PotentialSpec>(&v);
  if (!sp) fail(ErrorKind::InvalidPotential, "solve needs a power-sum potential");
  const PotentialSpec spec = *sp;
  RadialProblem<PotentialSpec> pb;
  pb.potential = spec;
  pb.k = k;
  pb.l = l;
  pb.r_start = r_start;
  pb.r_stop = r_stop;
  pb.step_hint = step_hint;
  pb.tolerance = tol;
  RadialSolution s = integrate(pb);
  std::ostringstream os;
  os << "# schema: 1\n# command: solve\n# potential: " << to_literal(spec) << "\n# k: " << g(k) << "\n# l: " << l << "\n";
  os << "# r_start: " << g(s.grid.front()) << "\n# r_stop: " << g(r_stop) << "\n# step_hint: " << g(step_hint)
     << "\n# tolerance: " << g(tol) << "\n";
  os << "# normalization: u(r_start) = r_start^(l+1) (1 + O(r_start)); overall scale arbitrary";
  if (s.rescale_count) os << ", rescaled " << s.rescale_count << " times by 2^-512";
  os << "\n# local_error_estimate: " << g(s.local_error_estimate) << "\n";
  os << "r,u,du\n";
  for (std::size_t i = 0; i < s.grid.size(); ++i) os << g(s.grid[i]) << "," << g(s.u[i]) << "," << g(s.du[i]) << "\n";
  return os.str();
}

std::string phase_shift_text(const std::string& lit, const Sweep& sw, const std::vector<int>& ls, double r_match,
                             const std::string& model, const std::string& logref, int steps, double tol) {
  Potential v = parse_potential(lit);
  const auto* spec = std::get_if<PotentialSpec>(&v);
  if (!spec) fail(ErrorKind::InvalidPotential, "phase-shift needs a power-sum potential");
  for (int l : ls)
    if (l < 0) fail(ErrorKind::InvalidArgument, "l must be nonnegative");
  PhaseShiftSettings set;
  set.extract.model = model == "asymptotic" ? MatchModel::Asymptotic : MatchModel::Uniform;
  set.extract.log_reference = logref == "2kr" ? LogReference::TwoKR : LogReference::Unit;
  set.homotopy_steps = steps;
  set.tolerance = tol;

  struct Job {
    double k;
    int l;
    std::future<PhaseShiftResult> f;
  };
  std::vector<Job> jobs;
  for (double k : sw.ks())
    for (int l : ls)
      jobs.push_back({k, l, std::async(std::launch::async, [=, s = *spec] { return phase_shift(s, k, l, r_match, set); })});

  std::ostringstream os;
  os << "schema: 1\ncommand: phase-shift\npotential: " << to_literal(*spec) << "\nr_match: " << g(r_match)
     << "\nmodel: " << model << "\nlog_reference: " << logref << "\nhomotopy_steps: " << steps
     << "\ntolerance: " << g(tol) << "\nmax_drift: " << g(set.extract.max_drift) << "\nrecords: " << jobs.size() << "\n";
  // Collect everything first so a failure anywhere leaves no partial output.
  std::vector<PhaseShiftResult> res;
  for (auto& j : jobs) res.push_back(j.f.get());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& r = res[i];
    os << "- k: " << g(jobs[i].k) << "\n  l: " << jobs[i].l << "\n  delta: " << g(r.delta) << "\n  amplitude: " << g(r.amplitude)
       << "\n  residual: " << g(r.residual) << "\n  drift: " << g(r.drift) << "\n  branch: " << r.branch << "\n";
  }
  return os.str();
}

std::string dual_text(const std::string& lit, double k, bool have_energy, double energy) {
  PotentialSpec spec = parse_power_sum(lit);
  DualResult d = have_energy ? dual_potential_at_energy(spec, energy) : dual_potential(spec, k);
  PotentialClass c0 = classify(spec), c1 = classify(d.potential);
  std::ostringstream os;
  os << "schema: 1\ncommand: dual\npotential: " << to_literal(spec) << "\n";
  os << "energy: " << g(d.map.energy) << "\n";
  os << "a: " << g(d.map.a) << "\nA: " << g(d.map.A) << "\nm: " << g(d.map.m) << "\n";
  os << "dual_potential: " << to_literal(d.potential) << "\n";
  os << "kappa: " << g(d.map.kappa) << "\nkappa_squared_sign: " << d.map.kappa_sign << "\n";
  os << "N_original: " << n_index_name(c0.n_index) << "\nN_dual: " << n_index_name(c1.n_index) << "\n";
  os << "N_preserved: " << (c0.n_index == c1.n_index ? "true" : "false") << "\n";
  return os.str();
}

std::string validate_text(bool& all) {
  auto checks = validation::run_all();
  std::ostringstream os;
  os << "schema: 1\ncommand: validate\nchecks: " << checks.size() << "\n";
  all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    os << "- id: " << c.id << "\n  name: " << c.name << "\n  status: " << (c.passed ? "pass" : "fail")
       << "\n  measured: " << g(c.measured) << "\n  threshold: " << g(c.threshold) << "\n  detail: " << c.detail << "\n";
  }
  os << "all_passed: " << (all ? "true" : "false") << "\n";
  return os.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw IoError("failed writing '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tortoise-coordinate tools for long-range radial scattering"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string output;
  app.add_option("-o,--output", output, "Write the artifact to this file instead of stdout");

  std::string lit;
  double k = 1.0;
  int l = 0;

  auto* c_classify = app.add_subcommand("classify", "Classify a potential by regime and N");
  c_classify->add_option("potential", lit, "Potential literal, e.g. '[{\"c\":1,\"p\":-1}]' or 'log(1)'")->required();

  std::vector<double> grid;
  std::string spacing = "linear";
  auto* c_tort = app.add_subcommand("tortoise", "Tabulate r*(r), dr*/dr and the remainder potential (CSV)");
  c_tort->add_option("potential", lit, "Potential literal")->required();
  c_tort->add_option("--k", k, "Wavenumber")->capture_default_str();
  c_tort->add_option("--grid", grid, "start stop count")->expected(3)->required();
  c_tort->add_option("--spacing", spacing, "linear or geometric")
      ->check(CLI::IsMember({"linear", "geometric"}))
      ->capture_default_str();

  std::vector<double> range;
  double step_hint = 0.1, tol = 1e-12;
  auto* c_solve = app.add_subcommand("solve", "Integrate the radial equation outward (CSV r,u,du)");
  c_solve->add_option("potential", lit, "Power-sum potential literal")->required();
  c_solve->add_option("--k", k, "Wavenumber")->capture_default_str();
  c_solve->add_option("--l", l, "Angular momentum")->capture_default_str();
  c_solve->add_option("--range", range, "r_start r_stop; r_start 0 picks the default origin radius")->expected(2)->required();
  c_solve->add_option("--step-hint", step_hint, "Largest step")->capture_default_str();
  c_solve->add_option("--tolerance", tol, "Local error per unit length")->capture_default_str();

  Sweep sweep;
  std::vector<int> ls{0};
  double r_match = 500.0;
  std::string model = "uniform", logref = "unit";
  int steps = 8;
  auto* c_phase = app.add_subcommand("phase-shift", "Extract delta_l by matching at r_match and 1.2 r_match");
  c_phase->add_option("potential", lit, "Power-sum potential literal")->required();
  auto* k_opt = c_phase->add_option("--k", sweep.k, "Wavenumber")->capture_default_str();
  c_phase->add_option("--k-sweep", sweep.k_sweep, "start stop count")->expected(3)->excludes(k_opt);
  c_phase->add_option("--l", ls, "Angular momenta")->capture_default_str();
  c_phase->add_option("--rmatch", r_match, "Matching radius")->capture_default_str();
  c_phase->add_option("--model", model, "uniform or asymptotic")->check(CLI::IsMember({"uniform", "asymptotic"}))->capture_default_str();
  c_phase->add_option("--log-reference", logref, "unit (ln r) or 2kr (ln 2kr)")->check(CLI::IsMember({"unit", "2kr"}))->capture_default_str();
  c_phase->add_option("--homotopy-steps", steps, "Coupling steps used to fix the branch")->capture_default_str();
  c_phase->add_option("--tolerance", tol, "Integrator tolerance")->capture_default_str();

  double energy = 0.0;
  auto* c_dual = app.add_subcommand("dual", "Newton dual of a vanishing power-sum potential");
  c_dual->add_option("potential", lit, "Power-sum potential literal")->required();
  auto* k_dual = c_dual->add_option("--k", k, "Wavenumber of the original problem (E = k^2)")->capture_default_str();
  auto* e_opt = c_dual->add_option("--energy", energy, "Signed energy E instead of k")->excludes(k_dual);

  auto* c_validate = app.add_subcommand("validate", "Run the acceptance checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "parse-error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::string text;
    int status = 0;
    if (*c_classify) {
      text = classify_text(lit);
    } else if (*c_tort) {
      text = tortoise_csv(lit, k, grid, spacing);
    } else if (*c_solve) {
      text = solve_csv(lit, k, l, range[0], range[1], step_hint, tol);
    } else if (*c_phase) {
      text = phase_shift_text(lit, sweep, ls, r_match, model, logref, steps, tol);
    } else if (*c_dual) {
      text = dual_text(lit, k, e_opt->count() > 0, energy);
    } else if (*c_validate) {
      bool all = false;
      text = validate_text(all);
      status = all ? 0 : 1;
    }
    emit(text, output);
    return status;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::Parse ? 2 : 3;
  } catch (const IoError& e) {
    std::cerr << "io-error: " << e.what() << "\n";
    return 4;
  }
}
