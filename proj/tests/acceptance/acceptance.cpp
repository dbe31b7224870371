// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.
// Criterion numbers given as arguments restrict the run to those criteria.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "pickfam/cli.hpp"
#include "pickfam/identities.hpp"
#include "pickfam/oracle.hpp"
#include "pickfam/pick.hpp"
#include "test_helpers.hpp"

using namespace testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Criterion = std::function<void(Outcome&)>;

double factorial(int n) { return std::tgamma(n + 1.0); }

void conductor_reproduction(Outcome& o) {
  o.require(NumericalSemigroup({2, 3}).conductor_exponent() == 2, "conductor <2,3>");
  o.require(NumericalSemigroup({2, 5}).conductor_exponent() == 4, "conductor <2,5>");
  o.require(NumericalSemigroup({2, 5}).subalgebra_basis_mod_conductor() == std::vector<int>{0, 2}, "basis <2,5>");
  const auto tv = SubalgebraSpec::two_var_example();
  o.require(tv.ring().dimension() == 2 && tv.ring().jet_sizes() == std::vector<std::size_t>{2}, "two-var quotient");
  o.require(tv.subalgebra_basis().size() == 1, "two-var A/c dimension");
  o.detail << "<2,3> -> 2, <2,5> -> 4 with basis {1, z^2}, two-variable quotient C[z]/(z^2) with dim A/c = 1";
}

void picard_parametrization(Outcome& o) {
  const auto s = spec_z2_z5();
  std::size_t equivalent_pairs = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(mix_seed(101, t));
    const JetElement u = random_element(s.ring(), rng);
    const auto& j = u.jets()[0];
    const std::vector<GaussRational> closed{j[1] / j[0], (j[3] * j[0] - j[2] * j[1]) / (j[0] * j[0])};
    o.require(picard_coordinates(s, u) == closed, "closed-form orbit map");
    o.require(orbit_map_z2_z5(u) == closed, "library orbit map");

    const JetElement v = t % 2 == 0 ? u * random_subalgebra_unit(s, rng) : random_element(s.ring(), rng);
    const bool eq = orbit_equivalent(s, u, v);
    equivalent_pairs += eq;
    o.require(eq == (picard_coordinates(s, u) == picard_coordinates(s, v)), "equivalence vs coordinates");
  }
  std::size_t spec_count = 0;
  for (std::uint64_t t = 0; t < 30; ++t) {
    Rng rng(mix_seed(102, t));
    std::vector<Root> roots;
    int total = 0;
    const long r = rng.integer(1, 3);
    for (long i = 0; i < r; ++i) {
      const int k = static_cast<int>(rng.integer(1, 3));
      roots.push_back(Root{GaussRational(Rational(i, 3), Rational(rng.integer(-3, 3), 8)), k});
      total += k;
    }
    const auto spec = SubalgebraSpec::one_plus_ideal(roots);
    const JetElement u = random_element(spec.ring(), rng);
    o.require(picard_coordinates(spec, u).size() == static_cast<std::size_t>(total - 1), "OnePlus dimension");
    ++spec_count;
  }
  o.detail << "100 units match (b/a, (d a - c b)/a^2); 100 pairs (" << equivalent_pairs
           << " equivalent) consistent; " << spec_count << " OnePlusIdeal specs have dimension sum k_j - 1";
}

void drury_arveson_identities(Outcome& o) {
  std::size_t monomials = 0;
  for (int m = 0; m <= 12; ++m)
    for (int n = 0; m + n <= 12; ++n) {
      const double expected = factorial(m) * factorial(n) / factorial(m + n);
      const MultiPoly p = MultiPoly::monomial({m, n});
      const Rational exact = inner_product(p, p).re();
      o.require(std::abs(exact.get_d() - expected) <= 1e-15 * expected, "monomial norm");
      // Exact check: ||z^a||^2 (m+n)! = m! n! in integers.
      mpz_class fm = 1, fn = 1, fs = 1;
      for (int i = 2; i <= m; ++i) fm *= i;
      for (int i = 2; i <= n; ++i) fn *= i;
      for (int i = 2; i <= m + n; ++i) fs *= i;
      o.require(exact * Rational(fs) == Rational(fm * fn), "exact monomial norm");
      ++monomials;
    }
  std::size_t polys = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const MultiPoly f = random_polynomial(2, 10, 20, mix_seed(103, t));
    o.require(defect_identity(f).is_zero(), "defect identity");
    ++polys;
  }
  o.detail << monomials << " monomial norms exact; defect identity zero on " << polys << " polynomials";
}

void closeness_suite(Outcome& o) {
  const auto st = must_be_close_trials(10000, Rational(1, 10), 104);
  o.require(st.trials == 10000, "trial count");
  o.require(st.hypotheses_met == st.trials, "all trials meet the hypotheses");
  o.require(st.violations == 0, "single-function bounds");
  o.require(st.pair_trials > 0 && st.pair_violations == 0, "pair overlap bound");
  o.detail << st.trials << " trials, " << st.hypotheses_met << " meeting hypotheses, " << st.violations
           << " violations; " << st.pair_trials << " pairs, " << st.pair_violations
           << " overlap violations, smallest normalized overlap " << st.min_overlap << " (bound 1 - 8 eps), eps <= " << st.max_eps;
}

void inner_sequence(Outcome& o) {
  const auto rep = inner_sequence_check(12);
  o.require(rep.violations.empty(), "operator identity");
  o.require(rep.sphere_identity, "sphere identity");
  o.detail << rep.monomials_checked << " monomials, " << rep.violations.size()
           << " violations; |w|^2 + |z|^2 = 1 on the image holds symbolically";
}

void kernel_consistency(Outcome& o) {
  const auto s = spec_z2_z5();
  double worst = 0;
  for (const auto& [x, y] : {std::pair{0, 0}, std::pair{1, 0}, std::pair{1, 2}}) {
    const JetElement u = canonical_representative(s, {GaussRational(x), GaussRational(y)});
    const auto k = submodule_kernel(s, u);
    Rng rng(mix_seed(105, static_cast<std::uint64_t>(3 * x + y)));
    for (int i = 0; i < 20; ++i) {
      const Complex z = rng.in_disc(0.7), w = rng.in_disc(0.7);
      const Complex oracle = projection_oracle(s, u, z, w, 60);
      const double rel = std::abs(k.scalar({z}, {w}) - oracle) / std::abs(oracle);
      worst = std::max(worst, rel);
    }
  }
  o.require(worst <= 1e-8, "projection oracle");
  const auto c = spec_classical();
  const auto kc = submodule_kernel(c, c.ring().one());
  double worst_szego = 0;
  Rng rng(106);
  for (int i = 0; i < 100; ++i) {
    const Point z{rng.in_disc(0.95)}, w{rng.in_disc(0.95)};
    worst_szego = std::max(worst_szego, std::abs(kc.scalar(z, w) - szego(z, w)) / std::abs(szego(z, w)));
  }
  o.require(worst_szego <= 1e-14, "Szego");
  o.detail << "max relative error vs degree-60 projection " << worst << "; vs Szego " << worst_szego;
}

void necessity(Outcome& o) {
  const std::vector<std::pair<std::string, SubalgebraSpec>> specs = {
      {"<2,3>", spec_z2_z3()}, {"<2,5>", spec_z2_z5()}, {"1+z(z-1/2)C[z]", spec_two_roots()}};
  SweepOptions opt;
  opt.samples = 500;
  opt.seed = 107;
  for (const auto& [name, spec] : specs) {
    const auto family = build_family(spec, opt);
    std::size_t infeasible = 0, undetermined = 0;
    double worst_margin = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
      Rng rng(mix_seed(108, t));
      PickProblem p;
      p.spec = spec;
      p.options = opt;
      std::vector<Complex> nodes;
      do {
        nodes = {rng.in_disc(0.8), rng.in_disc(0.8), rng.in_disc(0.8)};
        p.nodes = {{nodes[0]}, {nodes[1]}, {nodes[2]}};
      } while (!separates(spec, p.nodes));
      p.targets = sample_attainable(spec, nodes, mix_seed(109, t));
      const auto v = sweep(p, family);
      infeasible += v.status == Status::Infeasible;
      undetermined += v.status == Status::Undetermined;
      if (v.witness) worst_margin = std::min(worst_margin, v.witness->margin());
    }
    o.require(infeasible == 0, name + " infeasible verdicts");
    o.detail << name << ": " << infeasible << " Infeasible, " << undetermined << " Undetermined of 200; ";
  }
}

void oracle_cross_validation(Outcome& o) {
  const auto spec = spec_z2_z3();
  const int degree = 24, grid = 512;
  const double delta = 1e-6;
  const double delta_prime = delta + (1.0 / std::cos(std::numbers::pi * degree / grid) - 1.0);
  SweepOptions opt;
  opt.samples = 500;
  opt.boundary = true;
  std::size_t retained = 0, agree = 0, excluded = 0, sweep_infeasible_bad = 0, undetermined = 0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(mix_seed(110, t));
    const std::vector<Complex> nodes{rng.in_disc(0.7), rng.in_disc(0.7)};
    std::vector<Complex> targets;
    double value = 0;
    for (;;) {
      const std::vector<Complex> raw{rng.in_disc(1.0), rng.in_disc(1.0)};
      const double v = min_sup_norm(make_instance(spec, nodes, raw, degree, grid, delta)).value;
      const double scale = rng.uniform(0.6, 1.4) / v;
      if (std::abs(raw[0]) * scale > 1.0 || std::abs(raw[1]) * scale > 1.0) continue;
      targets = {raw[0] * scale, raw[1] * scale};
      value = min_sup_norm(make_instance(spec, nodes, targets, degree, grid, delta)).value;
      break;
    }
    if (std::abs(value - 1.0) <= 10 * delta_prime) {
      ++excluded;
      continue;
    }
    PickProblem p;
    p.spec = spec;
    p.nodes = {{nodes[0]}, {nodes[1]}};
    p.targets = targets;
    p.options = opt;
    p.options.seed = mix_seed(111, t);
    const auto v = sweep(p);
    ++retained;
    const bool oracle_infeasible = value > 1.0;
    undetermined += v.status == Status::Undetermined;
    if ((v.status == Status::Infeasible && oracle_infeasible) ||
        (v.status == Status::FeasibleCandidate && !oracle_infeasible))
      ++agree;
    if (v.status == Status::Infeasible && !oracle_infeasible) ++sweep_infeasible_bad;
  }
  const double rate = retained ? static_cast<double>(agree) / static_cast<double>(retained) : 0.0;
  o.require(retained > 0 && rate >= 0.95, "agreement rate");
  o.require(sweep_infeasible_bad == 0, "sweep Infeasible implies oracle > 1");
  o.detail << agree << "/" << retained << " agree (" << 100 * rate << "%), " << excluded
           << " in the margin band [1 -/+ " << 10 * delta_prime << "], " << undetermined << " Undetermined, "
           << sweep_infeasible_bad << " Infeasible with oracle <= 1";
}

void matrix_smoke(Outcome& o) {
  const auto spec = spec_z2_z3();
  const std::size_t k = 2;
  std::size_t certified = 0;
  for (std::size_t s = 1; s <= 2; ++s)
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const JetMatrix z = sample_qs(spec, k, s, seed);
      o.require(is_surjective(spec, z) && z.rows() == s && z.cols() == k, "Nakayama certificate");
      o.require(sample_qs(spec, k, s, seed) == z, "sample_qs seed stability");
      ++certified;
    }
  std::size_t equivalent = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const std::size_t s = 1 + t % 2;
    const JetMatrix z1 = sample_qs(spec, k, s, mix_seed(112, t));
    const JetMatrix z2 = t % 3 == 0 ? sample_qs(spec, k, s, mix_seed(113, t)) : z1 * sample_gl(spec, k, t).transpose();
    const JetMatrix z3 = z2 * sample_gl(spec, k, t + 1000).transpose();
    const bool e12 = qs_equivalent(spec, z1, z2);
    equivalent += e12;
    o.require(qs_equivalent(spec, z1, z1), "reflexive");
    o.require(e12 == qs_equivalent(spec, z2, z1), "symmetric");
    o.require(qs_equivalent(spec, z2, z3), "transformation invariance");
    o.require(e12 == qs_equivalent(spec, z1, z3), "transitive");
    o.require(e12 == qs_equivalent(spec, z1, z2), "seed-stable");
    if (t % 3 != 0) o.require(e12, "GL-related pair");
  }
  SweepOptions opt;
  opt.samples = 200;
  opt.seed = 114;
  const auto family = build_family(spec, opt, k);
  std::size_t infeasible = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    Rng rng(mix_seed(115, t));
    const std::vector<Complex> nodes{rng.in_disc(0.8), rng.in_disc(0.8)};
    PickProblem p;
    p.spec = spec;
    p.nodes = {{nodes[0]}, {nodes[1]}};
    p.matrix_targets = sample_attainable_matrix(spec, nodes, k, mix_seed(116, t));
    p.options = opt;
    infeasible += sweep(p, family).status == Status::Infeasible;
  }
  o.require(infeasible == 0, "attainable matrix instances");
  o.detail << certified << " Q_s samples certified; " << equivalent << "/50 pairs equivalent; family of "
           << family.size() << " Q_s kernels; " << infeasible << " Infeasible of 50 attainable instances";
}

std::string solve_output(const std::string& problem) {
  std::ostringstream out, err;
  pickfam::cli::run({"solve", "--problem", problem}, out, err);
  return out.str();
}

void reproducibility(Outcome& o) {
  const std::string problem = std::string(PICKFAM_DATA_DIR) + "/problem_2_3_infeasible.json";
  const std::string first = solve_output(problem);
  const std::string second = solve_output(problem);
  setenv("PICKFAM_THREADS", "1", 1);
  const std::string single = solve_output(problem);
  setenv("PICKFAM_THREADS", "3", 1);
  const std::string three = solve_output(problem);
  unsetenv("PICKFAM_THREADS");
  o.require(!first.empty(), "solve produced output");
  o.require(first == second, "repeat");
  o.require(first == single && first == three, "thread count");
  o.detail << "verdict JSON of " << first.size() << " bytes identical across 2 repeats and thread counts 1 and 3";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"conductor reproduction", conductor_reproduction},
      {"Picard parametrization", picard_parametrization},
      {"Drury-Arveson identities", drury_arveson_identities},
      {"closeness inequality suite", closeness_suite},
      {"inner sequence", inner_sequence},
      {"kernel consistency", kernel_consistency},
      {"necessity (scalar)", necessity},
      {"oracle cross-validation", oracle_cross_validation},
      {"matrix case smoke", matrix_smoke},
      {"reproducibility", reproducibility},
  };
  std::vector<bool> selected(criteria.size(), argc <= 1);
  for (int a = 1; a < argc; ++a) {
    const long n = std::strtol(argv[a], nullptr, 10);
    if (n < 1 || n > static_cast<long>(criteria.size())) {
      std::cerr << "unknown criterion " << argv[a] << '\n';
      return 2;
    }
    selected[static_cast<std::size_t>(n - 1)] = true;
  }
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << " (" << secs
              << " s): " << o.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
