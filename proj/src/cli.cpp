#include "pickfam/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pickfam/errors.hpp"
#include "pickfam/identities.hpp"
#include "pickfam/io.hpp"
#include "pickfam/oracle.hpp"
#include "pickfam/pick.hpp"
#include "pickfam/semigroup.hpp"

namespace pickfam::cli {

namespace {

using io::json;

struct Flags {
  std::string spec;
  std::string unit;
  std::string problem;
  std::string instance;
  std::string out;
  std::string epsilon = "1/10";
  int grid = 8;
  int degree = 12;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<double> radius;
  std::optional<double> tol;
  bool kernel_json = false;
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

// ---------------------------------------------------------------- commands

int cmd_conductor(const Flags& fl, std::ostream& out) {
  const SubalgebraSpec spec = io::parse_spec(io::read_json_file(fl.spec));
  json r;
  r["spec"] = io::to_json(spec);
  r["quotient_dimension"] = spec.ring().dimension();
  r["subalgebra_dimension"] = spec.subalgebra_basis().size();
  r["picard_dimension"] = spec.picard_dimension();
  switch (spec.kind()) {
    case SubalgebraSpec::Kind::Semigroup:
      r["conductor_exponent"] = spec.numerical_semigroup().conductor_exponent();
      r["basis"] = spec.numerical_semigroup().subalgebra_basis_mod_conductor();
      break;
    case SubalgebraSpec::Kind::OnePlusIdeal: {
      r["conductor_generator"] = io::to_json(spec.conductor_generator());
      json basis = json::array();
      for (const auto& b : spec.subalgebra_basis()) basis.push_back(io::to_json(b));
      r["basis"] = basis;
      break;
    }
    case SubalgebraSpec::Kind::TwoVarExample: {
      r["conductor_generators"] = json::array({io::to_json(MultiPoly::monomial({0, 1})),
                                               io::to_json(MultiPoly::monomial({2, 0}))});
      json basis = json::array();
      for (const auto& b : spec.subalgebra_basis()) basis.push_back(io::to_json(b));
      r["basis"] = basis;
      break;
    }
  }
  out << r.dump(2) << '\n';
  return kSuccess;
}

int cmd_picard(const Flags& fl, std::ostream& out) {
  const SubalgebraSpec spec = io::parse_spec(io::read_json_file(fl.spec));
  const JetElement u = io::parse_jet(io::read_json_file(fl.unit), spec.ring());
  json coords = json::array();
  for (const auto& c : picard_coordinates(spec, u)) coords.push_back(io::to_json(c));
  json r = {{"dimension", spec.picard_dimension()}, {"coordinates", coords}};
  r["canonical_representative"] = io::to_json(canonical_representative(spec, picard_coordinates(spec, u)));
  out << r.dump(2) << '\n';
  return kSuccess;
}

// Spiral of grid points inside the disc of radius 0.9.
std::vector<Point> kernel_grid(int n, int vars) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Complex> pts;
  for (int j = 0; j < n; ++j) pts.push_back(std::polar(0.9 * (j + 0.5) / n, golden * j));
  std::vector<Point> out;
  for (int j = 0; j < n; ++j) {
    if (vars == 1) {
      out.push_back({pts[static_cast<std::size_t>(j)]});
    } else {
      out.push_back({0.6 * pts[static_cast<std::size_t>(j)], 0.6 * pts[static_cast<std::size_t>(n - 1 - j)]});
    }
  }
  return out;
}

int cmd_kernel(const Flags& fl, std::ostream& out) {
  const SubalgebraSpec spec = io::parse_spec(io::read_json_file(fl.spec));
  const JetElement u = fl.unit.empty() ? spec.ring().one() : io::parse_jet(io::read_json_file(fl.unit), spec.ring());
  const KernelModel k = submodule_kernel(spec, u);
  if (fl.kernel_json) {
    write_output(fl.out, io::to_json(k).dump(2) + "\n", out);
    return kSuccess;
  }
  if (fl.grid < 1) throw InvalidArgument("grid must be positive");
  const auto pts = kernel_grid(fl.grid, spec.vars());
  std::ostringstream os;
  os.precision(17);
  const char* names[] = {"z", "w"};
  for (const char* who : names)
    for (int v = 0; v < spec.vars(); ++v) {
      const std::string base = spec.vars() == 1 ? who : std::string(who) + std::to_string(v + 1);
      os << base << "_re," << base << "_im,";
    }
  os << "k_re,k_im\n";
  for (const auto& z : pts)
    for (const auto& w : pts) {
      for (const auto& c : z) os << c.real() << ',' << c.imag() << ',';
      for (const auto& c : w) os << c.real() << ',' << c.imag() << ',';
      const Complex v = k.scalar(z, w);
      os << v.real() << ',' << v.imag() << '\n';
    }
  write_output(fl.out, os.str(), out);
  return kSuccess;
}

int cmd_solve(const Flags& fl, std::ostream& out) {
  io::ProblemFile pf = io::parse_problem(io::read_json_file(fl.problem));
  PickProblem& p = pf.problem;
  if (fl.seed) p.options.seed = *fl.seed;
  if (fl.samples) p.options.samples = *fl.samples;
  if (fl.radius) p.options.radius = *fl.radius;
  if (fl.tol) p.options.tol = *fl.tol;
  p.options = io::parse_sweep_options(json::object(), p.options);
  Verdict v = sweep(p);
  if (pf.cross_check) v.oracle = oracle_cross_check(p);
  out << io::to_json(v, p.options).dump(2) << '\n';
  if (!fl.out.empty()) write_output(fl.out, io::verdict_csv(v), out);
  switch (v.status) {
    case Status::Infeasible:
      return kInfeasible;
    case Status::Undetermined:
      return kUndetermined;
    case Status::FeasibleCandidate:
      return kSuccess;
  }
  return kSuccess;
}

int cmd_oracle(const Flags& fl, std::ostream& out) {
  const MinimaxInstance inst = io::parse_instance(io::read_json_file(fl.instance));
  const MinimaxResult r = min_sup_norm(inst);
  json j = io::to_json(r);
  j["degree"] = inst.degree;
  j["grid"] = inst.grid;
  j["delta"] = inst.delta;
  j["feasible"] = r.value <= 1.0 + inst.delta;
  out << j.dump(2) << '\n';
  return kSuccess;
}

int cmd_verify(const Flags& fl, std::ostream& out) {
  if (fl.degree < 4) throw InvalidArgument("verify needs --degree >= 4");
  const std::uint64_t seed = fl.seed.value_or(0);
  const auto suites = run_identity_suites(fl.degree, seed);
  json arr = json::array();
  bool ok = true;
  for (const auto& s : suites) {
    arr.push_back(io::to_json(s));
    ok = ok && s.passed;
  }
  json r = {{"degree", fl.degree}, {"seed", seed}, {"suites", arr}, {"passed", ok}};
  out << r.dump(2) << '\n';
  return ok ? kSuccess : kToleranceFailure;
}

int cmd_a11demo(const Flags& fl, std::ostream& out) {
  const Rational eps = pickfam::parse_rational(fl.epsilon);
  if (sgn(eps) <= 0) throw InvalidArgument("epsilon must be positive");
  const std::uint64_t seed = fl.seed.value_or(0);
  const CloseTrialStats st = must_be_close_trials(fl.trials, eps, seed);
  json r = io::to_json(st);
  r["epsilon_max"] = pickfam::to_string(eps);
  r["overlap_bound"] = 1.0 - 8.0 * eps.get_d();
  r["passed"] = st.violations == 0 && st.pair_violations == 0;
  out << r.dump(2) << '\n';
  return (st.violations == 0 && st.pair_violations == 0) ? kSuccess : kToleranceFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained Nevanlinna-Pick families for cusp algebras", "pickfam"};
  app.require_subcommand(1, 1);
  Flags fl;

  auto* conductor = app.add_subcommand("conductor", "Conductor exponent and basis of A/c");
  conductor->add_option("--spec", fl.spec, "Spec JSON file")->required();

  auto* picard = app.add_subcommand("picard", "Orbit coordinates of a unit");
  picard->add_option("--spec", fl.spec, "Spec JSON file")->required();
  picard->add_option("--unit", fl.unit, "Unit JSON file")->required();

  auto* kernel = app.add_subcommand("kernel", "Kernel values on a point grid (CSV)");
  kernel->add_option("--spec", fl.spec, "Spec JSON file")->required();
  kernel->add_option("--unit", fl.unit, "Unit JSON file (default: 1)");
  kernel->add_option("--grid", fl.grid, "Grid points per axis")->capture_default_str();
  kernel->add_option("--out", fl.out, "Output file (default: stdout)");
  kernel->add_flag("--json", fl.kernel_json, "Dump the kernel model as JSON instead");

  auto* solve = app.add_subcommand("solve", "Sweep the family for a Pick problem");
  solve->add_option("--problem", fl.problem, "Problem JSON file")->required();
  solve->add_option("--seed", fl.seed, "Override the sweep seed");
  solve->add_option("--samples", fl.samples, "Override the sample count");
  solve->add_option("--radius", fl.radius, "Override the Picard radius");
  solve->add_option("--tol", fl.tol, "Override the PSD tolerance");
  solve->add_option("--out", fl.out, "CSV of per-sample minimum eigenvalues");

  auto* oracle = app.add_subcommand("oracle", "Minimal sup-norm interpolation");
  oracle->add_option("--instance", fl.instance, "Instance JSON file")->required();

  auto* verify = app.add_subcommand("verify", "Exact identity suites");
  verify->add_option("--degree", fl.degree, "Degree bound")->capture_default_str();
  verify->add_option("--seed", fl.seed, "Seed for random polynomials");

  auto* demo = app.add_subcommand("a11demo", "Closeness lemma statistics");
  demo->add_option("--epsilon", fl.epsilon, "Largest epsilon, as p/q or decimal")->capture_default_str();
  demo->add_option("--trials", fl.trials, "Number of trials")->capture_default_str();
  demo->add_option("--seed", fl.seed, "Trial seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "pickfam: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (conductor->parsed()) return cmd_conductor(fl, out);
    if (picard->parsed()) return cmd_picard(fl, out);
    if (kernel->parsed()) return cmd_kernel(fl, out);
    if (solve->parsed()) return cmd_solve(fl, out);
    if (oracle->parsed()) return cmd_oracle(fl, out);
    if (verify->parsed()) return cmd_verify(fl, out);
    if (demo->parsed()) return cmd_a11demo(fl, out);
  } catch (const TruncationInsufficient& e) {
    err << "pickfam: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const NumericalFailure& e) {
    err << "pickfam: " << e.what() << '\n';
    return kToleranceFailure;
  } catch (const Error& e) {
    err << "pickfam: " << e.what() << '\n';
    return kInputError;
  } catch (const json::exception& e) {
    err << "pickfam: malformed input: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace pickfam::cli
