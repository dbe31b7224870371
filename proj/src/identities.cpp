#include "pickfam/identities.hpp"

#include <cmath>
#include <sstream>

#include "pickfam/errors.hpp"
#include "pickfam/quotient.hpp"
#include "pickfam/random.hpp"
#include "pickfam/semigroup.hpp"

namespace pickfam {

namespace {

const std::vector<Exponent>& inner_sequence() {
  static const std::vector<Exponent> seq = {{0, 1}, {2, 0}, {1, 1}};
  return seq;
}

Rational norm2(const MultiPoly& p) { return inner_product(p, p).re(); }

}  // namespace

MultiPoly monomial_adjoint(const Exponent& a, const MultiPoly& p) {
  MultiPoly out(p.vars());
  for (const auto& [b, c] : p.terms()) {
    Exponent diff(b.size());
    bool divisible = true;
    for (std::size_t i = 0; i < b.size(); ++i) {
      diff[i] = b[i] - a[i];
      if (diff[i] < 0) divisible = false;
    }
    if (!divisible) continue;
    out.add_term(diff, c * GaussRational(monomial_norm2(b) / monomial_norm2(diff)));
  }
  return out;
}

Rational inner_sequence_coefficient(int m, int n) {
  const MultiPoly p = MultiPoly::monomial({m, n});
  MultiPoly sum(2);
  for (const auto& f : inner_sequence()) sum += monomial_adjoint(f, p).shifted(f);
  for (const auto& [e, c] : sum.terms())
    if (e != Exponent{m, n}) throw NumericalFailure("inner sequence operator is not diagonal");
  return sum.coefficient({m, n}).re();
}

InnerSequenceReport inner_sequence_check(int degree) {
  if (degree < 4) throw InvalidArgument("inner sequence check needs degree >= 4");
  InnerSequenceReport rep;
  rep.degree = degree;
  for (int total = 0; total <= degree; ++total)
    for (int m = total; m >= 0; --m) {
      const int n = total - m;
      const MultiPoly p = MultiPoly::monomial({m, n});
      MultiPoly sum(2);
      for (const auto& f : inner_sequence()) sum += monomial_adjoint(f, p).shifted(f);
      const bool projected_out = (n == 0 && m <= 1);
      const MultiPoly expected = projected_out ? MultiPoly(2) : p;
      ++rep.monomials_checked;
      if (!(sum == expected)) rep.violations.push_back({m, n});
    }
  // x = |z|^2, y = |w|^2 with y = 1 - x.
  const MultiPoly x = MultiPoly::monomial({1});
  const MultiPoly y = MultiPoly::constant(1, 1) - x;
  rep.sphere_identity = (y + x * x + x * y) == MultiPoly::constant(1, 1);
  return rep;
}

GaussRational defect_identity(const MultiPoly& f) {
  if (f.vars() != 2) throw InvalidArgument("defect identity is stated for two variables");
  GaussRational d = inner_product(f.shifted({1, 0}), f.shifted({1, 0})) +
                    inner_product(f.shifted({0, 1}), f.shifted({0, 1})) - inner_product(f, f);
  for (const auto& [e, c] : f.terms())
    d -= GaussRational(c.norm2() * monomial_norm2(e) / Rational(e[0] + e[1] + 1));
  return d;
}

const char* to_string(CloseStatus s) {
  switch (s) {
    case CloseStatus::Holds:
      return "Holds";
    case CloseStatus::Violated:
      return "Violated";
    case CloseStatus::HypothesisNotMet:
      return "HypothesisNotMet";
  }
  return "?";
}

CloseReport must_be_close_check(const MultiPoly& f, const Rational& eps) {
  if (f.vars() != 2) throw InvalidArgument("closeness check is stated for two variables");
  CloseReport r;
  r.norm2 = norm2(f);
  r.constant2 = f.coefficient({0, 0}).norm2();
  r.z1_norm2 = norm2(f.shifted({1, 0}));
  r.z2_norm2 = norm2(f.shifted({0, 1}));
  const Rational floor = (1 - eps) * r.norm2;
  if (f.is_zero() || !(r.z1_norm2 > floor) || !(r.z2_norm2 > floor)) {
    r.status = CloseStatus::HypothesisNotMet;
    return r;
  }
  const bool a = r.constant2 >= (1 - 4 * eps) * r.norm2;
  const bool b = r.norm2 - r.constant2 <= 4 * eps * r.norm2;
  r.status = (a && b) ? CloseStatus::Holds : CloseStatus::Violated;
  return r;
}

CloseStatus pair_overlap_check(const MultiPoly& f, const MultiPoly& g, const Rational& eps) {
  const auto f0 = f.coefficient({0, 0});
  const auto g0 = g.coefficient({0, 0});
  if (!f0.is_real() || sgn(f0.re()) <= 0 || !g0.is_real() || sgn(g0.re()) <= 0)
    return CloseStatus::HypothesisNotMet;
  if (must_be_close_check(f, eps).status == CloseStatus::HypothesisNotMet ||
      must_be_close_check(g, eps).status == CloseStatus::HypothesisNotMet)
    return CloseStatus::HypothesisNotMet;
  const Rational bound = 1 - 8 * eps;
  if (sgn(bound) < 0) return CloseStatus::Holds;
  const Rational overlap2 = inner_product(f, g).norm2();
  return overlap2 >= bound * bound * norm2(f) * norm2(g) ? CloseStatus::Holds : CloseStatus::Violated;
}

MultiPoly random_polynomial(int vars, int degree, std::size_t max_terms, std::uint64_t seed) {
  Rng rng(seed);
  MultiPoly p(vars);
  const auto terms = static_cast<std::size_t>(rng.integer(1, static_cast<long>(max_terms)));
  for (std::size_t t = 0; t < terms; ++t) {
    Exponent e(static_cast<std::size_t>(vars), 0);
    int budget = static_cast<int>(rng.integer(0, degree));
    for (int i = 0; i < vars; ++i) {
      const int take = (i + 1 == vars) ? budget : static_cast<int>(rng.integer(0, budget));
      e[static_cast<std::size_t>(i)] = take;
      budget -= take;
    }
    p.add_term(e, rng.small_gauss(9, rng.integer(1, 9)));
  }
  if (p.is_zero()) p.add_term(Exponent(static_cast<std::size_t>(vars), 0), 1);
  return p;
}

namespace {

// 1 + delta * (random perturbation), with delta halved until the closeness
// hypotheses hold at eps. The constant term stays exactly 1.
MultiPoly near_constant(Rng& rng, const Rational& eps) {
  MultiPoly perturbation(2);
  const long terms = rng.integer(1, 6);
  for (long t = 0; t < terms; ++t) {
    const int total = static_cast<int>(rng.integer(1, 4));
    const int m = static_cast<int>(rng.integer(0, total));
    perturbation.add_term({m, total - m}, rng.small_gauss(8, 8));
  }
  Rational delta(1);
  for (int j = 0; j < 64; ++j, delta /= 2) {
    MultiPoly f = MultiPoly::constant(2, 1) + perturbation * GaussRational(delta);
    if (must_be_close_check(f, eps).status != CloseStatus::HypothesisNotMet) return f;
  }
  return MultiPoly::constant(2, 1);
}

}  // namespace

CloseTrialStats must_be_close_trials(std::size_t trials, const Rational& eps_max, std::uint64_t seed) {
  CloseTrialStats st;
  st.seed = seed;
  const Rational grid(1, 65536);
  const long top = std::max<long>(1, static_cast<long>(mpz_class(eps_max / grid).get_si()));
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));
    const Rational eps = Rational(rng.integer(1, top)) * grid;
    const MultiPoly f = near_constant(rng, eps);
    const MultiPoly g = near_constant(rng, eps);
    ++st.trials;
    const CloseReport rf = must_be_close_check(f, eps);
    if (rf.status != CloseStatus::HypothesisNotMet) ++st.hypotheses_met;
    if (rf.status == CloseStatus::Violated) ++st.violations;
    const CloseStatus ps = pair_overlap_check(f, g, eps);
    if (ps == CloseStatus::HypothesisNotMet) continue;
    ++st.pair_trials;
    if (ps == CloseStatus::Violated) ++st.pair_violations;
    const double ov =
        std::sqrt(inner_product(f, g).norm2().get_d() / (norm2(f).get_d() * norm2(g).get_d()));
    st.min_overlap = std::min(st.min_overlap, ov);
    st.max_eps = std::max(st.max_eps, eps.get_d());
  }
  return st;
}

namespace {

Rational binomial(int n, int k) {
  Rational b(1);
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

std::vector<SuiteResult> run_identity_suites(int degree, std::uint64_t seed) {
  std::vector<SuiteResult> out;

  {
    SuiteResult r{"monomial_norms", true, 0, ""};
    for (int m = 0; m <= degree; ++m)
      for (int n = 0; m + n <= degree; ++n) {
        ++r.cases;
        const MultiPoly p = MultiPoly::monomial({m, n});
        const Rational expected = 1 / binomial(m + n, m);
        if (monomial_norm2({m, n}) != expected || inner_product(p, p) != GaussRational(expected)) {
          r.passed = false;
          r.detail = "mismatch at z1^" + std::to_string(m) + " z2^" + std::to_string(n);
        }
      }
    out.push_back(r);
  }

  {
    SuiteResult r{"defect_identity", true, 0, ""};
    for (std::uint64_t i = 0; i < 200; ++i) {
      ++r.cases;
      const MultiPoly f = random_polynomial(2, degree, 20, mix_seed(seed, i));
      if (!defect_identity(f).is_zero()) {
        r.passed = false;
        r.detail = "nonzero defect for sample " + std::to_string(i);
      }
    }
    out.push_back(r);
  }

  {
    const auto rep = inner_sequence_check(std::max(degree, 4));
    SuiteResult r{"inner_sequence", rep.ok(), rep.monomials_checked, ""};
    if (!rep.sphere_identity) r.detail = "sphere identity failed";
    if (!rep.violations.empty())
      r.detail = std::to_string(rep.violations.size()) + " monomials violate the operator identity";
    out.push_back(r);
  }

  {
    SuiteResult r{"orbit_map_z2_z5", true, 0, ""};
    const auto spec = SubalgebraSpec::semigroup(NumericalSemigroup({2, 5}));
    for (std::uint64_t i = 0; i < 100; ++i) {
      Rng rng(mix_seed(seed ^ 0x0b17ULL, i));
      std::vector<GaussRational> jet(4);
      for (auto& c : jet) c = rng.small_gauss(9, rng.integer(1, 5));
      if (jet[0].is_zero()) jet[0] = 1;
      const JetElement u({jet});
      ++r.cases;
      if (picard_coordinates(spec, u) != orbit_map_z2_z5(u)) {
        r.passed = false;
        r.detail = "canonical form differs from the closed form for sample " + std::to_string(i);
      }
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace pickfam
